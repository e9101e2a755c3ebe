#include "ncssa/verify.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ncssa/entropy.hpp"
#include "ncssa/random.hpp"

namespace ncssa {

const char* theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::A: return "A";
    case TheoremId::B: return "B";
    case TheoremId::C: return "C";
    case TheoremId::SSA: return "SSA";
    case TheoremId::DPI: return "DPI";
    case TheoremId::MU: return "MU";
    case TheoremId::PetzSSA: return "PetzSSA";
  }
  return "?";
}

namespace {

void finish(InequalityReport& r) {
  r.gap = r.lhs - r.rhs;
  r.pass = r.vacuous || r.gap >= -r.tol;
}

}  // namespace

InequalityReport check_theorem_A(const AlgElement& rho_mc, const Channel& phi_a, const Channel& phi_b, int c_dim,
                                 std::optional<double> c_override, std::uint64_t seed) {
  const Algebra& m = phi_a.input();
  if (!(phi_b.input() == m)) throw ShapeError("check_theorem_A: channels need a common input");
  if (!m.is_full_block() || c_dim < 1) throw ShapeError("check_theorem_A: M must be a full block and |C| >= 1");
  const Algebra mc = tensor_algebra(m, Algebra::full(c_dim));
  if (!(rho_mc.algebra() == mc)) throw ShapeError("check_theorem_A: the state does not live on M (x) C");
  require_positive(rho_mc);

  const Channel la = id_tensor(phi_a, c_dim);
  const Channel lb = id_tensor(phi_b, c_dim);
  const Inclusion ca = Inclusion::right_factor(phi_a.output(), c_dim);
  const Inclusion cb = Inclusion::right_factor(phi_b.output(), c_dim);
  const Inclusion cm = Inclusion::right_factor(m, c_dim);

  const AlgElement rho_ac = la(rho_mc).hermitian_part();
  const double h_a = conditional_entropy(rho_ac, ca);
  const double h_b = conditional_entropy(lb(rho_mc).hermitian_part(), cb);
  const double h_m = conditional_entropy(rho_mc, cm);

  InequalityReport r;
  r.theorem = TheoremId::A;
  r.seed = seed;
  r.tol = kTolA;
  r.constant = c_override ? *c_override : cb_constant(phi_a, phi_b);
  r.lhs = h_a + h_b;
  r.rhs = h_m - std::log(r.constant);
  r.diag["H(A|C)"] = h_a;
  r.diag["H(B|C)"] = h_b;
  r.diag["H(M|C)"] = h_m;

  const SdpResult s = state_dependent_constant(rho_mc, la, lb, ca);
  r.alt_constant = s.value;
  r.alt_gap = r.lhs - h_m + std::log(s.value);
  r.diag["c_rho_gap"] = s.gap;
  finish(r);
  return r;
}

InequalityReport check_theorem_B(const AlgElement& rho, const Channel& phi_a, const Channel& phi_b,
                                 const Inclusion& r_inc, std::optional<double> c_override, std::uint64_t seed) {
  if (!(rho.algebra() == phi_a.input()) || !(rho.algebra() == phi_b.input()))
    throw ShapeError("check_theorem_B: the state does not live on the common input");
  require_positive(rho);
  const AlgElement rho_a = phi_a(rho).hermitian_part();
  const double h_a = von_neumann_entropy(rho_a);
  const double h_b = von_neumann_entropy(phi_b(rho).hermitian_part());
  const double h_m = von_neumann_entropy(rho);
  const double h_r = von_neumann_entropy(r_inc.expect(rho_a).hermitian_part());

  InequalityReport r;
  r.theorem = TheoremId::B;
  r.seed = seed;
  r.tol = kTolB;
  if (c_override) {
    r.constant = *c_override;
  } else {
    const OverlapResult o = overlap_constant(phi_a, phi_b, r_inc);
    r.constant = o.value;
    r.diag["restarts_agreeing"] = o.agreeing;
    if (o.upper) r.diag["c_upper"] = *o.upper;
  }
  r.lhs = h_a + h_b;
  r.rhs = h_m + h_r - std::log(r.constant);
  r.diag["H(A)"] = h_a;
  r.diag["H(B)"] = h_b;
  r.diag["H(M)"] = h_m;
  r.diag["H(R)"] = h_r;

  const SdpResult s = state_dependent_constant(rho, phi_a, phi_b, r_inc);
  r.alt_constant = s.value;
  r.alt_gap = r.lhs - h_m - h_r + std::log(s.value);
  finish(r);
  return r;
}

InequalityReport check_theorem_C(const KappaProblem& pb, const QuadConfig& cfg, std::optional<KappaResult> kappa_in,
                                 std::uint64_t seed) {
  const KappaResult k = kappa_in ? *kappa_in : kappa(pb, cfg);
  const AlgElement rb = pb.phi_b(pb.rho).hermitian_part();
  const AlgElement sb = pb.phi_b(pb.sigma).hermitian_part();
  const double d_m = relative_entropy(pb.rho, pb.sigma);
  const double d_r = relative_entropy(pb.e_r.on_density(rb).hermitian_part(), pb.e_r.on_density(sb).hermitian_part());
  const double d_a = relative_entropy(pb.phi_a(pb.rho).hermitian_part(), pb.phi_a(pb.sigma).hermitian_part());
  const double d_b = relative_entropy(rb, sb);

  InequalityReport r;
  r.theorem = TheoremId::C;
  r.seed = seed;
  r.tol = kTolC;
  r.constant = k.kappa;
  r.lhs = d_m + d_r;
  r.rhs = d_a + d_b - k.kappa;
  r.vacuous = std::isinf(r.lhs);
  r.diag["D(M)"] = d_m;
  r.diag["D(R)"] = d_r;
  r.diag["D(A)"] = d_a;
  r.diag["D(B)"] = d_b;
  r.diag["quad_error"] = k.quadrature_error_estimate;
  r.diag["support_cut"] = k.support_cut;
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------

ChannelTriple channels_of(const SubalgebraTriple& s) {
  ChannelTriple t;
  t.phi_a = s.a.cond_exp();
  t.phi_b = s.b.cond_exp();
  t.r_in_a = Inclusion(compose(s.a.cond_exp(), s.r.embed()));
  return t;
}

CommutingSquareReport detect_commuting_square(const SubalgebraTriple& s, const OverlapOptions& opt) {
  if (!s.a.induced() || !s.b.induced() || !s.r.induced())
    throw ConstructionError("detect_commuting_square: subalgebras must carry induced traces");
  const ChannelTriple t = channels_of(s);
  CommutingSquareReport rep;
  rep.c = overlap_constant(t.phi_a, t.phi_b, t.r_in_a, opt).value;

  auto proj = [](const Inclusion& inc) -> Mat { return inc.embed().coord() * inc.cond_exp().coord(); };
  const Mat pa = proj(s.a), pb = proj(s.b), pr = proj(s.r);
  rep.residual = std::max((pa * pb - pr).cwiseAbs().maxCoeff(), (pb * pa - pr).cwiseAbs().maxCoeff());
  rep.is_commuting_square = rep.residual <= 1e-8;
  rep.agree = (std::abs(rep.c - 1.0) <= 1e-6) == rep.is_commuting_square;
  return rep;
}

namespace {

Mat fourier(int d) {
  Mat f(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      f(j, k) = std::polar(1.0 / std::sqrt(double(d)), 2.0 * std::numbers::pi * j * k / d);
  return f;
}

Mat swap_unitary(int d) {
  Mat s = Mat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s(j * d + i, i * d + j) = 1.0;
  return s;
}

SubalgebraTriple tensor_pair(int d, const Mat& u) {
  const double w = d;
  return {Inclusion::multiplicity(d, d, u, w), Inclusion::multiplicity(d, d, u * swap_unitary(d), w),
          Inclusion::scalar(Algebra::full(d * d), w * w)};
}

SubalgebraTriple diagonal_pair(int d, const Mat& u, const Mat& v) {
  return {Inclusion::diagonal(d, u), Inclusion::diagonal(d, v), Inclusion::scalar(Algebra::full(d), d)};
}

}  // namespace

SubalgebraTriple tensor_square(int d) { return tensor_pair(d, Mat::Identity(d * d, d * d)); }

SubalgebraTriple mub_square(int d) { return diagonal_pair(d, Mat::Identity(d, d), fourier(d)); }

SubalgebraTriple rotated_diagonals(double angle) {
  Mat r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return diagonal_pair(2, Mat::Identity(2, 2), r);
}

SubalgebraTriple random_commuting_square(std::uint64_t seed) {
  Rng rng(seed);
  const int d = 2 + rng.below(2);
  if (rng.below(2) == 0) return tensor_pair(d, haar_unitary(d * d, rng));
  const Mat u = haar_unitary(d, rng);
  return diagonal_pair(d, u, u * fourier(d));
}

SubalgebraTriple random_subalgebra_pair(std::uint64_t seed) {
  Rng rng(seed);
  if (rng.below(2) == 0) {
    const int d = 2 + rng.below(2);
    return diagonal_pair(d, Mat::Identity(d, d), haar_unitary(d, rng));
  }
  const Mat u = haar_unitary(4, rng);
  return {Inclusion::multiplicity(2, 2, Mat::Identity(4, 4), 2.0), Inclusion::multiplicity(2, 2, u * swap_unitary(2), 2.0),
          Inclusion::scalar(Algebra::full(4), 4.0)};
}

// ---------------------------------------------------------------------------

bool is_prime(int d) {
  if (d < 2) return false;
  for (int k = 2; k * k <= d; ++k)
    if (d % k == 0) return false;
  return true;
}

std::pair<Povm, Povm> mub_povms(int d) {
  if (!is_prime(d)) throw ConstructionError("mub_povms: d must be prime");
  return {Povm::projective(Mat::Identity(d, d)), Povm::projective(fourier(d))};
}

ChannelPair build_mub_instance(int d) {
  auto [p, q] = mub_povms(d);
  ChannelPair c{povm_channel(p), povm_channel(q), {}};
  c.r_inc = Inclusion::scalar(c.phi_a.output(), 1.0);
  return c;
}

ChannelPair build_partial_trace_instance(int d_a, int d_b) {
  ChannelPair c{partial_trace_channel({d_a, d_b}, {0}), partial_trace_channel({d_a, d_b}, {1}), {}};
  c.r_inc = Inclusion::scalar(c.phi_a.output(), 1.0);
  return c;
}

KappaProblem build_petz_instance(int d1, int d2, int d3, std::uint64_t seed) {
  Rng rng(seed);
  const Mat s1 = random_state(Algebra::full(d1), rng).block(0);
  const Mat s2 = random_state(Algebra::full(d2), rng).block(0);
  const Mat s3 = random_state(Algebra::full(d3), rng).block(0);
  const Algebra m = Algebra::full(d1 * d2 * d3);
  KappaProblem pb;
  pb.sigma = AlgElement::from_matrix(m, dense::kron(dense::kron(s1, s2), s3));
  pb.rho = random_state(m, rng);
  pb.phi_a = partial_trace_channel({d1, d2, d3}, {0, 1});
  pb.phi_b = partial_trace_channel({d1, d2, d3}, {1, 2});
  pb.e_r = ConditionalExpectation::tensor(d2, s3);
  return pb;
}

KappaProblem build_dpi_instance(int d, int d_b, std::uint64_t seed, bool unitary) {
  Rng rng(seed);
  const Algebra m = Algebra::full(d);
  KappaProblem pb;
  pb.rho = random_state(m, rng);
  pb.sigma = random_state(m, rng);
  pb.phi_a = trace_channel(m, 1.0);
  pb.phi_b = unitary ? unitary_channel(haar_unitary(d, rng)) : random_channel(d, d_b, d, rng);
  pb.e_r = ConditionalExpectation::trivial(pb.phi_b(pb.sigma).hermitian_part());
  return pb;
}

KappaProblem build_improved_dpi_instance(int d, int d_a, std::uint64_t seed, bool unitary) {
  Rng rng(seed);
  const Algebra m = Algebra::full(d);
  KappaProblem pb;
  pb.rho = random_state(m, rng);
  pb.sigma = random_state(m, rng);
  pb.phi_a = unitary ? unitary_channel(haar_unitary(d, rng)) : random_channel(d, d_a, d, rng);
  pb.phi_b = trace_channel(m, 1.0);
  pb.e_r = ConditionalExpectation::trivial(pb.phi_b(pb.sigma).hermitian_part());
  return pb;
}

}  // namespace ncssa
