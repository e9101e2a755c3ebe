#include <doctest.h>

#include <cmath>

#include "ncssa/entropy.hpp"
#include "ncssa/gcmi.hpp"
#include "ncssa/random.hpp"
#include "ncssa/verify.hpp"

using namespace ncssa;

namespace {

double h(const Mat& m) { return von_neumann_entropy(AlgElement::from_matrix(Algebra::full(int(m.rows())), m)); }

double shannon(const AlgElement& diag_state) {
  double s = 0;
  for (const Mat& b : diag_state.blocks()) {
    const double p = b(0, 0).real();
    if (p > 0) s -= p * std::log(p);
  }
  return s;
}

}  // namespace

TEST_CASE("Theorem A on partial traces is strong subadditivity") {
  Rng rng(1);
  const ChannelPair pt = build_partial_trace_instance(2, 2);
  for (int rep = 0; rep < 10; ++rep) {
    const AlgElement rho = random_state(Algebra::full(8), 1 + rep % 8, rng);
    const InequalityReport r = check_theorem_A(rho, pt.phi_a, pt.phi_b, 2);
    CHECK(r.pass);
    CHECK(r.constant == doctest::Approx(1.0).epsilon(1e-12));
    // oracle: H(AC) + H(BC) - H(ABC) - H(C) from explicit marginals on A (x) B (x) C
    const Mat& x = rho.block(0);
    const double ssa = h(dense::partial_trace(x, {2, 2, 2}, {0, 2})) + h(dense::partial_trace(x, {2, 2, 2}, {1, 2})) -
                       h(x) - h(dense::partial_trace(x, {2, 2, 2}, {2}));
    CHECK(r.gap == doctest::Approx(ssa).epsilon(1e-9));
    CHECK(ssa >= -1e-9);
    REQUIRE(r.alt_gap);
    CHECK(*r.alt_gap <= r.gap + 1e-9);
  }
}

TEST_CASE("Theorem A on random channels") {
  Rng rng(2);
  for (int rep = 0; rep < 10; ++rep) {
    const Channel a = random_channel(2, 2, 2, rng), b = random_channel(2, 3, 2, rng);
    const AlgElement rho = random_state(Algebra::full(4), rng);
    const InequalityReport r = check_theorem_A(rho, a, b, 2, {}, rep);
    CHECK(r.pass);
    CHECK(r.gap >= -1e-8);
    CHECK(*r.alt_gap <= r.gap + 1e-9);
  }
  CHECK_THROWS_AS(check_theorem_A(random_state(Algebra::full(3), rng), random_channel(2, 2, 2, rng),
                                  random_channel(2, 2, 2, rng), 2),
                  ShapeError);
}

TEST_CASE("Theorem A is tight for the Hadamard pair on the maximally mixed state") {
  const ChannelPair m = build_mub_instance(2);
  const AlgElement mixed = AlgElement::identity(Algebra::full(2)) * cplx(0.5);
  const InequalityReport r = check_theorem_A(mixed, m.phi_a, m.phi_b, 1);
  CHECK(r.lhs == doctest::Approx(2 * std::log(2.0)).epsilon(1e-12));
  CHECK(std::abs(r.gap) <= 1e-10);
}

TEST_CASE("Theorem B and the Maassen-Uffink relation") {
  Rng rng(3);
  const ChannelPair m = build_mub_instance(3);
  for (int rep = 0; rep < 5; ++rep) {
    const AlgElement rho = random_state(Algebra::full(3), 1 + rep % 3, rng);
    const InequalityReport r = check_theorem_B(rho, m.phi_a, m.phi_b, m.r_inc);
    CHECK(r.pass);
    CHECK(r.constant == doctest::Approx(1.0 / 3).epsilon(1e-8));
    // H(X) + H(Z) >= log d + H(rho)
    const double want = shannon(m.phi_a(rho)) + shannon(m.phi_b(rho)) - std::log(3.0) - von_neumann_entropy(rho);
    CHECK(r.gap == doctest::Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("Theorem C reduces to data processing") {
  const KappaProblem pb = build_dpi_instance(2, 2, 7);
  const InequalityReport r = check_theorem_C(pb);
  CHECK(r.pass);
  CHECK(std::abs(r.constant) <= 1e-10);
  const double dpi = relative_entropy(pb.rho, pb.sigma) - relative_entropy(pb.phi_b(pb.rho), pb.phi_b(pb.sigma));
  CHECK(r.gap == doctest::Approx(dpi).epsilon(1e-9));

  const InequalityReport s = check_theorem_C(build_improved_dpi_instance(2, 2, 8));
  CHECK(s.pass);
  CHECK(s.constant <= 1e-8);
}

TEST_CASE("commuting squares") {
  {
    const CommutingSquareReport r = detect_commuting_square(tensor_square(2));
    CHECK(r.is_commuting_square);
    CHECK(r.c == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r.agree);
  }
  {
    const CommutingSquareReport r = detect_commuting_square(mub_square(3));
    CHECK(r.is_commuting_square);
    CHECK(r.c == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r.agree);
  }
  {
    const CommutingSquareReport r = detect_commuting_square(rotated_diagonals(std::acos(-1.0) / 6));
    CHECK_FALSE(r.is_commuting_square);
    CHECK(r.c > 1.0 + 1e-6);
    CHECK(r.agree);
  }
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    CHECK(detect_commuting_square(random_commuting_square(seed)).agree);
    CHECK(detect_commuting_square(random_subalgebra_pair(seed)).agree);
  }
}

TEST_CASE("instance builders") {
  CHECK(is_prime(5));
  CHECK_FALSE(is_prime(6));
  CHECK_THROWS(mub_povms(4));
  const ChannelPair m = build_mub_instance(5);
  CHECK(m.phi_a.cptp());
  CHECK(m.phi_b.cptp());
  for (const KappaProblem& pb :
       {build_petz_instance(2, 2, 2, 1), build_dpi_instance(3, 2, 1), build_improved_dpi_instance(3, 2, 1, true)})
    CHECK_NOTHROW(pb.validate());
}

TEST_CASE("generalized conditional mutual information") {
  Rng rng(4);
  const ChannelPair pt = build_partial_trace_instance(2, 2);
  for (int rep = 0; rep < 5; ++rep) {
    const AlgElement rho = random_state(Algebra::full(8), rng);
    const double g = gcmi(rho, pt.phi_a, pt.phi_b, 2);
    CHECK(g >= -1e-10);
    const InequalityReport r = check_theorem_A(rho, pt.phi_a, pt.phi_b, 2);
    CHECK(g == doctest::Approx(r.gap).epsilon(1e-10));
  }
  const ChannelPair m = build_mub_instance(2);
  const GcmiResult best = minimize_gcmi(m.phi_a, m.phi_b, 1);
  // H(X) + H(Z) - H(rho) >= log 2 with equality on basis states
  CHECK(best.value >= std::log(2.0) - 1e-8);
  CHECK(best.value <= std::log(2.0) + 1e-6);
}
