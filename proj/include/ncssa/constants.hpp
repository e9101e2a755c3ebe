#pragma once
// Uncertainty constants: the Choi-norm constant, measurement overlaps, the
// bilinear overlap constant with its state-dependent variant, and the BSW
// log-Euclidean comparison constant.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ncssa/inclusion.hpp"
#include "ncssa/sdp.hpp"

namespace ncssa {

/// ||Choi(Phi_B o Phi_A^dag)||_inf. M must be a full block; A and B may be
/// direct sums with unit weights (they are lifted to full blocks through the
/// block-diagonal embedding, which leaves the cb norm unchanged).
double cb_constant(const Channel& phi_a, const Channel& phi_b);

struct OverlapPairs {
  double value = 0.0;
  std::vector<std::pair<int, int>> argmax;  // all (x, z) within 1e-12 of the max
};
/// max_{x,z} tr(E_x F_z).
OverlapPairs frank_lieb_overlap(const Povm& p, const Povm& q);

struct OverlapOptions {
  int restarts = 16;
  int max_rounds = 200;
  double tol = 1e-12;  // stop when one round gains less than this (relative)
  std::uint64_t seed = 0xc0ffee;
  std::vector<AlgElement> seed_b;  // extra starting states in B, tried first
  SdpOptions sdp{};
};

struct OverlapResult {
  double value = 0.0;  // certified lower bound on c
  std::optional<double> upper;  // Choi-norm upper bound when comparable
  AlgElement a, b;     // witnesses: a >= 0 with E_R(a) <= 1, b in D(B)
  int restarts = 0;
  int rounds = 0;
  int agreeing = 0;    // restarts whose value is within 1e-7 of the best
  bool converged = false;
};

/// sup{tau_M(Phi_A^dag(a) Phi_B^dag(b)) : a in A_+, E_R(a) <= 1, b in D(B)} by
/// alternating maximization. r_inc is R inside A.
OverlapResult overlap_constant(const Channel& phi_a, const Channel& phi_b, const Inclusion& r_inc,
                               const OverlapOptions& opt = {});

/// ||Phi_A(Phi_B^dag(Phi_B(rho)))||_{L_1^inf(R subset A)}.
SdpResult state_dependent_constant(const AlgElement& rho, const Channel& phi_a, const Channel& phi_b,
                                   const Inclusion& r_inc);

struct BswResult {
  double lower = 0.0;  // best local-search value of the BSW objective
  double upper = 0.0;  // overlap constant c (Golden-Thompson bound)
  AlgElement a, b;     // pair attaining `lower`
  int evaluations = 0;
};

/// tau_M(exp(ln Phi_A^dag(a) + ln Phi_B^dag(b))) for states a, b; singular
/// arguments are floored at 1e-14 relative to their top eigenvalue.
double bsw_objective(const Channel& phi_a, const Channel& phi_b, const AlgElement& a, const AlgElement& b);
/// R = C case (weight 1 on R).
BswResult bsw_constant(const Channel& phi_a, const Channel& phi_b, int restarts = 8, std::uint64_t seed = 0xb5);

/// max over states b of tau_B(y b) = max_k lambda_max(y_k), with the maximizing
/// rank-one state.
std::pair<double, AlgElement> top_state(const AlgElement& y);

}  // namespace ncssa
