#include <doctest.h>

#include <cmath>

#include "ncssa/algebra.hpp"
#include "ncssa/random.hpp"

using namespace ncssa;

namespace {

Algebra mixed() { return Algebra({{2, 1.0}, {1, 0.5}, {3, 2.0}}); }

}  // namespace

TEST_CASE("coordinates and traces respect block weights") {
  const Algebra a = mixed();
  CHECK(a.total_dim() == 4 + 1 + 9);
  CHECK(a.hilbert_dim() == 6);
  CHECK(a.trace_of_identity() == doctest::Approx(2 * 1.0 + 1 * 0.5 + 3 * 2.0));
  CHECK_FALSE(a.has_unit_weights());
  const auto idx = a.index(a.coord(2, 1, 2));
  CHECK(idx.block == 2);
  CHECK(idx.row == 1);
  CHECK(idx.col == 2);

  Rng rng(1);
  const AlgElement x = random_element(a, rng);
  CHECK((AlgElement::from_coords(a, x.coords()) - x).max_abs() == 0.0);
  cplx t = 0;
  for (int k = 0; k < a.num_blocks(); ++k) t += a.weight(k) * x.block(k).trace();
  CHECK(std::abs(trace(x) - t) < 1e-12);
}

TEST_CASE("products and trace pairings") {
  Rng rng(2);
  const Algebra a = mixed();
  const AlgElement x = random_element(a, rng), y = random_element(a, rng);
  CHECK(std::abs(trace_product(x, y) - trace(x * y)) < 1e-12);
  CHECK(std::abs(trace_product(x, y) - trace_product(y, x)) < 1e-12);
  const AlgElement h = random_hermitian(a, rng), g = random_hermitian(a, rng);
  CHECK(trace_product_herm(h, g) == doctest::Approx(trace(h * g).real()).epsilon(1e-12));
  CHECK((x.adjoint().adjoint() - x).max_abs() == 0.0);
  CHECK(h.is_hermitian());
}

TEST_CASE("spectral calculus") {
  Rng rng(3);
  const Algebra a = mixed();
  const AlgElement rho = random_state(a, rng);
  CHECK(trace(rho).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(is_positive(rho));

  const AlgElement r = herm_power(rho, 0.5);
  CHECK((r * r - rho).max_abs() < 1e-12);
  CHECK((herm_exp(herm_log(rho)) - rho).max_abs() < 1e-12);
  // rho^{z} rho^{-z} is the identity on a faithful state, for complex z
  const cplx z(0.5, 0.8);
  CHECK((herm_power(rho, z) * herm_power(rho, -z) - AlgElement::identity(a)).max_abs() < 1e-10);
  // (rho^{z})^* = rho^{conj z}
  CHECK((herm_power(rho, z).adjoint() - herm_power(rho, std::conj(z))).max_abs() < 1e-12);

  const Mat v = haar_isometry(3, 1, rng);
  const Mat p = v * v.adjoint();
  const AlgElement proj(Algebra::full(3), {p});
  CHECK(lambda_max(proj) == doctest::Approx(1.0));
  CHECK((support_projection(proj) - proj).max_abs() < 1e-12);
  // negative powers act on the support only
  CHECK((herm_power(proj, -1.0) - proj).max_abs() < 1e-10);
  CHECK_THROWS_AS(require_positive(proj * cplx(-1.0)), PositivityError);
}

TEST_CASE("divided differences reduce to derivatives on repeated eigenvalues") {
  RVec l(3);
  l << 1.0, 1.0, 2.0;
  auto f = [](double x) { return std::exp(x); };
  const Eigen::MatrixXd g = dense::divided_differences(l, f, f);
  CHECK(g(0, 1) == doctest::Approx(std::exp(1.0)));
  CHECK(g(0, 2) == doctest::Approx((std::exp(2.0) - std::exp(1.0)) / 1.0));
  CHECK(g(2, 2) == doctest::Approx(std::exp(2.0)));
}

TEST_CASE("dense tensor helpers") {
  Rng rng(4);
  const Mat a = ginibre(2, 2, rng), b = ginibre(3, 3, rng);
  const Mat ab = dense::kron(a, b);
  CHECK((dense::partial_trace(ab, {2, 3}, {0}) - a * b.trace()).norm() < 1e-12);
  CHECK((dense::partial_trace(ab, {2, 3}, {1}) - b * a.trace()).norm() < 1e-12);
  CHECK((dense::permute_subsystems(ab, {2, 3}, {1, 0}) - dense::kron(b, a)).norm() < 1e-12);
  const Mat c = ginibre(2, 2, rng);
  const Mat abc = dense::kron(ab, c);
  CHECK((dense::partial_trace(abc, {2, 3, 2}, {0, 2}) - dense::kron(a, c) * b.trace()).norm() < 1e-12);
}

TEST_CASE("random ensembles are reproducible and well formed") {
  const Algebra a = Algebra::full(4);
  const AlgElement s1 = random_state(a, 2, 77), s2 = random_state(a, 2, 77);
  CHECK((s1 - s2).max_abs() == 0.0);
  const Spectrum sp = spectrum(s1);
  CHECK(sp.values[0](1) < 1e-12);  // rank 2 of 4
  Rng rng(5);
  const Mat u = haar_unitary(5, rng);
  CHECK((u.adjoint() * u - Mat::Identity(5, 5)).norm() < 1e-12);
  const Mat v = haar_isometry(6, 2, rng);
  CHECK((v.adjoint() * v - Mat::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("complex powers compose on the support") {
  Rng rng(6);
  const Algebra a({{3, 1.0}, {2, 0.5}});
  for (int rep = 0; rep < 10; ++rep) {
    const cplx z1(4 * rng.uniform() - 2, 3 * rng.normal()), z2(4 * rng.uniform() - 2, 3 * rng.normal());
    // absolute check with the spectrum kept in [0.2, 1.2]
    const AlgElement x = random_state(a, rng) + AlgElement::identity(a) * cplx(0.2);
    CHECK((herm_power(x, z1) * herm_power(x, z2) - herm_power(x, z1 + z2)).max_abs() < 1e-9);
    // relative check on an arbitrary faithful state, where x^{-2} can be large
    const AlgElement y = random_state(a, rng);
    const AlgElement lhs = herm_power(y, z1) * herm_power(y, z2), rhs = herm_power(y, z1 + z2);
    CHECK((lhs - rhs).max_abs() < 1e-11 * std::max(1.0, rhs.max_abs()));
  }
}
