#pragma once
// Amalgamated L_1^p norms of positive elements, plain and sigma_tr-weighted.

#include "ncssa/inclusion.hpp"
#include "ncssa/optimize.hpp"

namespace ncssa {

struct NormOptions {
  int restarts = 3;  // warm start, maximally mixed, then random Hermitian starts
  std::uint64_t seed = 0x5eed;
  BfgsOptions bfgs{.max_iter = 400, .grad_tol = 1e-13, .rel_tol = 1e-16, .step_max = 1.0};
};

struct NormResult {
  double value = 0.0;
  AlgElement sigma;        // minimizer, normalized as in the definition
  bool converged = false;
  int iterations = 0;      // BFGS iterations summed over restarts
  int restarts = 0;
  double spread = 0.0;     // max - min of the restart values
};

/// inf over sigma in D_+(N) of ||sigma^{-1/2p'} x sigma^{-1/2p'}||_p, x >= 0.
/// p = 1 is tau(x); p = inf is the L_1^inf SDP.
NormResult amalgamated_L1p_norm(const AlgElement& x, const Inclusion& inc, double p, const NormOptions& opt = {});

/// inf over gamma in N_+ with tau(gamma sigma_tr) = 1 of
/// ||gamma^{-1/2p'} x gamma^{-1/2p'}||_{p, sigma_tr}. sigma_tr is an invertible
/// positive element of M commuting with iota(N).
NormResult weighted_amalgamated_L1p(const AlgElement& x, const Inclusion& inc, const AlgElement& sigma_tr, double p,
                                    const NormOptions& opt = {});
/// Same with sigma_tr = iota(E_N(1)).
NormResult weighted_amalgamated_L1p(const AlgElement& x, const Inclusion& inc, double p, const NormOptions& opt = {});

/// H_p(A|B) = (p/(p-1)) log ||rho_AB||_{S_1(H_B, S_p(H_A))}; tends to -H(A|B) as p -> 1+.
double sandwiched_renyi_conditional(const Mat& rho_ab, int d_a, int d_b, double p, const NormOptions& opt = {});

}  // namespace ncssa
