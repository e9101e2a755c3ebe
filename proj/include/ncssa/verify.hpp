#pragma once
// Instance builders and inequality audits for Theorems A, B, C and their
// special cases.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "ncssa/constants.hpp"
#include "ncssa/kappa.hpp"

namespace ncssa {

enum class TheoremId { A, B, C, SSA, DPI, MU, PetzSSA };
const char* theorem_name(TheoremId id);

struct InequalityReport {
  TheoremId theorem = TheoremId::A;
  double lhs = 0.0, rhs = 0.0, gap = 0.0;  // gap = lhs - rhs
  double constant = 0.0;                   // c for A and B, kappa for C
  double tol = 0.0;
  std::uint64_t seed = 0;
  bool pass = false;                       // gap >= -tol
  bool vacuous = false;                    // lhs is +inf (support failure)
  std::optional<double> alt_constant, alt_gap;  // state-dependent c(rho)
  std::map<std::string, double> diag;
};

inline constexpr double kTolA = 1e-8;
inline constexpr double kTolB = 1e-8;
inline constexpr double kTolC = 1e-7;

/// H(A|C) + H(B|C) >= H(M|C) + log(1/c) for a state on M (x) C with M, C full
/// blocks and the channels acting on M. c defaults to cb_constant; c(rho) is
/// reported alongside.
InequalityReport check_theorem_A(const AlgElement& rho_mc, const Channel& phi_a, const Channel& phi_b, int c_dim,
                                 std::optional<double> c_override = {}, std::uint64_t seed = 0);

/// H(Phi_A rho) + H(Phi_B rho) >= H(rho) + H(E_R Phi_A rho) + log(1/c), R inside A.
InequalityReport check_theorem_B(const AlgElement& rho, const Channel& phi_a, const Channel& phi_b,
                                 const Inclusion& r_inc, std::optional<double> c_override = {},
                                 std::uint64_t seed = 0);

/// D(rho||sigma) + D(E_R Phi_B rho||E_R Phi_B sigma)
///   >= D(Phi_A rho||Phi_A sigma) + D(Phi_B rho||Phi_B sigma) - kappa.
InequalityReport check_theorem_C(const KappaProblem& pb, const QuadConfig& cfg = {},
                                 std::optional<KappaResult> kappa_in = {}, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Subalgebra configurations

struct SubalgebraTriple {
  Inclusion a, b, r;  // all inside the same M, R inside A and B
};

/// The Theorem B data of a triple: Phi_A = E_A, Phi_B = E_B and R inside A.
struct ChannelTriple {
  Channel phi_a, phi_b;
  Inclusion r_in_a;
};
ChannelTriple channels_of(const SubalgebraTriple& s);

struct CommutingSquareReport {
  double c = 0.0;
  double residual = 0.0;  // max |P_A P_B - P_R|, |P_B P_A - P_R| on coordinates
  bool is_commuting_square = false;
  bool agree = false;     // (|c - 1| <= 1e-6) == (residual <= 1e-8)
};

/// Requires induced traces on A, B and R.
CommutingSquareReport detect_commuting_square(const SubalgebraTriple& s, const OverlapOptions& opt = {});

/// M_d (x) 1 and 1 (x) M_d in M_{d^2}, R = C1.
SubalgebraTriple tensor_square(int d);
/// Diagonal and Fourier-rotated diagonal of M_d, R = C1.
SubalgebraTriple mub_square(int d);
/// Diagonal of M_2 and the diagonal rotated by `angle` radians, R = C1.
SubalgebraTriple rotated_diagonals(double angle);
/// A Haar-conjugated copy of a commuting square (tensor or MUB, d in {2, 3}).
SubalgebraTriple random_commuting_square(std::uint64_t seed);
/// A generic pair: diagonal vs Haar-rotated diagonal, or M_2 (x) 1 vs u (1 (x) M_2) u*.
SubalgebraTriple random_subalgebra_pair(std::uint64_t seed);

// ---------------------------------------------------------------------------
// Channel instances

bool is_prime(int d);
/// Computational and Fourier bases of C^d; d must be prime.
std::pair<Povm, Povm> mub_povms(int d);

struct ChannelPair {
  Channel phi_a, phi_b;
  Inclusion r_inc;  // R inside A
};
/// Measurement channels of the Fourier pair, R = C (weight 1).
ChannelPair build_mub_instance(int d);
/// tr_B and tr_A on M_{dA} (x) M_{dB}, R = C (weight 1).
ChannelPair build_partial_trace_instance(int d_a, int d_b);

/// Theorem C instances.
/// Petz setting: M = d1 (x) d2 (x) d3, Phi_A = tr_3, Phi_B = tr_1, R = M_{d2} (x) 1
/// inside B, sigma a product state. c(t) = 1 identically.
KappaProblem build_petz_instance(int d1, int d2, int d3, std::uint64_t seed);
/// A = R = C: Phi_A is the trace, Phi_B a random channel. c(t) = 1, kappa = 0.
KappaProblem build_dpi_instance(int d, int d_b, std::uint64_t seed, bool unitary = false);
/// B = R = C: Phi_B is the trace, Phi_A a random channel. kappa <= 0.
KappaProblem build_improved_dpi_instance(int d, int d_a, std::uint64_t seed, bool unitary = false);

}  // namespace ncssa
