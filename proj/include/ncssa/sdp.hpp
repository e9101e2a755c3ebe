#pragma once
// The covering SDP behind L_1^inf norms and the inner sup of c(t):
//
//   primal  min tau_N(Y)   s.t.  L(Y) >= X          (Y Hermitian in N)
//   dual    max tau_M(a X) s.t.  a >= 0, L^dag(a) <= 1
//
// solved by a log-barrier path-following Newton method. L must be positive
// with L(1) invertible, which makes Y = s 1 strictly feasible for large s.

#include "ncssa/channel.hpp"
#include "ncssa/inclusion.hpp"

namespace ncssa {

struct SdpOptions {
  double gap_tol = 1e-11;  // relative to lambda_max(X)
  double growth = 8.0;     // barrier parameter multiplier per outer step
  int max_newton = 400;
  int max_centering = 50;  // Newton steps per barrier value
  double accept_tol = 1e-9;  // gap still reported as converged once t saturates
};

struct SdpResult {
  double value = 0.0;   // certified dual value tau(a X), a lower bound
  double primal = 0.0;  // tau_N(Y), an upper bound
  double gap = 0.0;     // primal - value
  AlgElement y;         // primal point in N
  AlgElement witness;   // dual a in M with L^dag(a) <= 1
  int iterations = 0;
  bool converged = false;
};

SdpResult solve_cover_sdp(const Channel& l, const AlgElement& x, const SdpOptions& opt = {});

/// ||x||_{L_1^inf(N subset M)} = min{tau_N(Y) : iota(Y) >= x}.
SdpResult l1_inf_norm(const AlgElement& x, const Inclusion& inc, const SdpOptions& opt = {});

/// Orthonormal (Frobenius, unweighted) real basis of the Hermitian part of an algebra:
/// E_ii, (E_ij + E_ji)/sqrt2, i(E_ij - E_ji)/sqrt2 block by block.
std::vector<AlgElement> hermitian_basis(const Algebra& a);
AlgElement from_real_coords(const std::vector<AlgElement>& basis, const Eigen::VectorXd& theta);
Eigen::VectorXd to_real_coords(const std::vector<AlgElement>& basis, const AlgElement& h);

}  // namespace ncssa
