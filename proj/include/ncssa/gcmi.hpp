#pragma once
// Generalized conditional mutual information of a channel pair and its
// infimum over states at a fixed reference dimension.

#include <cstdint>
#include <optional>

#include "ncssa/inclusion.hpp"

namespace ncssa {

/// H(A|C) + H(B|C) - H(M|C), the channels acting on M and the identity on C.
double gcmi(const AlgElement& rho_mc, const Channel& phi_a, const Channel& phi_b, int c_dim);

struct GcmiOptions {
  int restarts = 8;
  int max_iter = 200;
  std::uint64_t seed = 0x6c31;
  std::optional<AlgElement> init;  // tried first when given
};

struct GcmiResult {
  double value = 0.0;  // upper bound on the infimum
  AlgElement rho;      // state attaining it
  bool converged = false;
  int iterations = 0;
};

/// Local descent over rho_MC = V V* / tr(V V*), V a (d_M |C|) x (d_M |C|)
/// Stinespring matrix, with a numeric gradient and multiple restarts.
GcmiResult minimize_gcmi(const Channel& phi_a, const Channel& phi_b, int c_dim, const GcmiOptions& opt = {});

}  // namespace ncssa
