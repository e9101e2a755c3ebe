#pragma once
// Theorem C machinery: a state-preserving conditional expectation onto R inside
// B, the inner constant c(t), and kappa = int alpha(t) log c(t) dt.

#include <vector>

#include "ncssa/inclusion.hpp"
#include "ncssa/quadrature.hpp"
#include "ncssa/sdp.hpp"

namespace ncssa {

/// E_R^dag : B -> R together with the inclusion R inside B.
struct ConditionalExpectation {
  Inclusion r_inc;
  Channel e_dag;

  /// R = C1 (weight 1): E^dag(b) = tau_B(b sigma_B).
  static ConditionalExpectation trivial(const AlgElement& sigma_b);
  /// B = M_{d1} (x) M_{d2}, R = M_{d1} (x) 1: E^dag(x) = tr_2((1 (x) sigma2) x).
  /// Preserves sigma_B when sigma_B = sigma1 (x) sigma2.
  static ConditionalExpectation tensor(int d1, const Mat& sigma2);

  /// Throws ConstructionError unless E^dag is a unital CP map onto R fixing
  /// R pointwise and tau_B(sigma_B E^dag(b)) = tau_B(sigma_B b).
  void validate(const AlgElement& sigma_b, double tol = 1e-9) const;

  /// The density-level map E_R = (iota o E^dag)^dag, from B to B.
  AlgElement on_density(const AlgElement& rho_b) const;
};

struct KappaProblem {
  AlgElement rho, sigma;   // states on M, sigma faithful
  Channel phi_a, phi_b;    // M -> A, M -> B
  ConditionalExpectation e_r;

  /// Checks shapes, CPTP flags, faithfulness of sigma and E_R^dag.
  void validate() const;
};

struct CtResult {
  double value = 0.0;
  double gap = 0.0;        // SDP gap, zero for scalar R
  bool support_cut = false;  // Phi_A(rho) or Phi_A(sigma) was rank deficient
};

/// sup{tau_B(b W(t)) : b >= 0, E^dag(b) = 1} with W(t) = Phi_B(K sigma K*),
/// K = Phi_A^dag(rho_A^{(1+it)/2} sigma_A^{(-1-it)/2}).
CtResult c_of_t(double t, const KappaProblem& pb, const SdpOptions& sdp = {});

struct KappaSample {
  double t, c_t, weight;
};

struct KappaResult {
  double kappa = 0.0;
  std::vector<KappaSample> samples;  // from the finest rule used
  double T = 0.0;
  double quadrature_error_estimate = 0.0;
  int halvings = 0;
  bool converged = false;
  bool support_cut = false;
};

KappaResult kappa(const KappaProblem& pb, const QuadConfig& cfg = {});

}  // namespace ncssa
