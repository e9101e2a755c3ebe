#include <doctest.h>

#include <cmath>

#include "ncssa/constants.hpp"
#include "ncssa/random.hpp"
#include "ncssa/verify.hpp"

using namespace ncssa;

namespace {

Channel dephasing(int d, const Mat& u = {}) {
  const Mat b = u.size() ? u : Mat::Identity(d, d);
  return povm_channel(Povm::projective(b));
}

Mat fourier(int d) {
  Mat f(d, d);
  const double pi = std::acos(-1.0);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) f(j, k) = std::polar(1.0 / std::sqrt(double(d)), 2 * pi * j * k / d);
  return f;
}

}  // namespace

TEST_CASE("Choi-norm constant") {
  const ChannelPair pt = build_partial_trace_instance(2, 2);
  CHECK(cb_constant(pt.phi_a, pt.phi_b) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cb_constant(dephasing(2), dephasing(2)) == doctest::Approx(1.0).epsilon(1e-12));
  for (int d : {2, 3}) {
    const Channel id = identity_channel(Algebra::full(d));
    CHECK(cb_constant(id, id) == doctest::Approx(double(d)).epsilon(1e-12));
  }
  const Channel multi = identity_channel(Algebra::diagonal(2));
  CHECK_THROWS_AS(cb_constant(multi, multi), UnsupportedShape);
}

TEST_CASE("measurement overlaps") {
  for (int d : {2, 3, 5}) {
    const auto [p, q] = mub_povms(d);
    const OverlapPairs o = frank_lieb_overlap(p, q);
    CHECK(std::abs(o.value - 1.0 / d) <= 1e-12);
    CHECK(o.argmax.size() == std::size_t(d * d));
    CHECK(std::abs(cb_constant(povm_channel(p), povm_channel(q)) - o.value) <= 1e-10);
  }
  const Povm z = Povm::projective(Mat::Identity(3, 3));
  CHECK(frank_lieb_overlap(z, z).value == doctest::Approx(1.0));
  CHECK_THROWS_AS(frank_lieb_overlap(z, Povm::projective(Mat::Identity(2, 2))), ShapeError);
}

TEST_CASE("bilinear overlap constant") {
  for (int d : {2, 3}) {
    const ChannelPair m = build_mub_instance(d);
    const OverlapResult r = overlap_constant(m.phi_a, m.phi_b, m.r_inc);
    CHECK(r.value == doctest::Approx(1.0 / d).epsilon(1e-8));
    REQUIRE(r.upper);
    CHECK(*r.upper == doctest::Approx(1.0 / d).epsilon(1e-10));
    CHECK(r.agreeing >= 1);
  }
  {
    const ChannelPair pt = build_partial_trace_instance(2, 3);
    const OverlapResult r = overlap_constant(pt.phi_a, pt.phi_b, pt.r_inc);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
  }
  {
    const Algebra m2 = Algebra::full(2);
    const Channel id = identity_channel(m2);
    const OverlapResult r = overlap_constant(id, id, Inclusion::scalar(m2));
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
  }
  {
    // a small non-MUB rotation of the second basis strictly raises the overlap
    Rng rng(1);
    const Mat h = random_hermitian(Algebra::full(3), rng).block(0);
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    const Vec ph = (es.eigenvalues() * 0.05).unaryExpr([](double x) { return std::polar(1.0, x); }).eval();
    const Mat u = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    const Channel a = dephasing(3), b = dephasing(3, u * fourier(3));
    const OverlapResult r = overlap_constant(a, b, Inclusion::scalar(a.output()));
    CHECK(r.value > 1.0 / 3 + 1e-6);
    CHECK(r.value <= cb_constant(a, b) + 1e-9);
  }
}

TEST_CASE("cb constant dominates every feasible witness pair") {
  Rng rng(2);
  for (int rep = 0; rep < 5; ++rep) {
    const Channel a = random_channel(3, 2, 2, rng), b = random_channel(3, 3, 2, rng);
    const double c = cb_constant(a, b);
    for (int k = 0; k < 20; ++k) {
      // R = C with weight 1: feasible a are exactly the states of A
      const AlgElement wa = random_state(a.output(), 1 + k % 2, rng), wb = random_state(b.output(), 1, rng);
      CHECK(trace_product(a.adjoint()(wa), b.adjoint()(wb)).real() <= c + 1e-12);
    }
  }
}

TEST_CASE("state-dependent constant") {
  Rng rng(3);
  const ChannelPair pt = build_partial_trace_instance(2, 2);
  for (int k = 0; k < 5; ++k) {
    const AlgElement rho = random_state(Algebra::full(4), rng);
    CHECK(state_dependent_constant(rho, pt.phi_a, pt.phi_b, pt.r_inc).value == doctest::Approx(1.0).epsilon(1e-8));
  }
  const ChannelPair m = build_mub_instance(3);
  const AlgElement mixed = AlgElement::identity(Algebra::full(3)) * cplx(1.0 / 3);
  CHECK(state_dependent_constant(mixed, m.phi_a, m.phi_b, m.r_inc).value == doctest::Approx(1.0 / 3).epsilon(1e-8));

  for (int rep = 0; rep < 50; ++rep) {
    const Channel a = random_channel(2, 2, 2, rng), b = random_channel(2, 2, 2, rng);
    const Inclusion r = Inclusion::scalar(a.output());
    const AlgElement rho = random_state(Algebra::full(2), rng);
    const double cr = state_dependent_constant(rho, a, b, r).value;
    CHECK(cr <= cb_constant(a, b) + 1e-7);
  }
}

TEST_CASE("BSW comparison constant") {
  {
    const Channel d = dephasing(3);
    const BswResult r = bsw_constant(d, d);
    CHECK(r.upper == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(r.lower - r.upper) <= 1e-8);
  }
  {
    const ChannelPair pt = build_partial_trace_instance(2, 2);
    const BswResult r = bsw_constant(pt.phi_a, pt.phi_b);
    CHECK(std::abs(r.lower - 1.0) <= 1e-8);
    CHECK(std::abs(r.upper - 1.0) <= 1e-8);
  }
  Rng rng(4);
  for (int rep = 0; rep < 3; ++rep) {
    const Channel a = random_channel(2, 2, 2, rng), b = random_channel(2, 3, 2, rng);
    const BswResult r = bsw_constant(a, b, 4, rep);
    CHECK(r.lower <= r.upper + 1e-8);
    CHECK(r.lower > 0.0);
  }
}

TEST_CASE("top state") {
  const Algebra a({{2, 1.0}, {1, 2.0}});
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 0.3;
  m(1, 1) = 0.4;
  Mat s(1, 1);
  s(0, 0) = 0.9;
  const auto [v, b] = top_state(AlgElement(a, {m, s}));
  CHECK(v == doctest::Approx(0.9));
  CHECK(trace(b).real() == doctest::Approx(1.0));
  CHECK(b.block(1)(0, 0).real() == doctest::Approx(0.5));
}
