#include <doctest.h>

#include <cmath>

#include "ncssa/amalgamated.hpp"
#include "ncssa/entropy.hpp"
#include "ncssa/random.hpp"

using namespace ncssa;

namespace {

// ||sigma^{-s} x sigma^{-s}||_p for a candidate sigma in N, evaluated directly.
double direct_value(const AlgElement& x, const Inclusion& inc, const AlgElement& sigma, double p) {
  const AlgElement a = herm_power(inc(sigma), -(p - 1.0) / (2.0 * p));
  return schatten_norm((a * x * a).hermitian_part(), p);
}

Mat max_entangled(int d) {
  Vec v = Vec::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(double(d));
  return v * v.adjoint();
}

template <class F>
double golden_min(F f, double lo, double hi) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  for (int i = 0; i < 200; ++i) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (f(c) < f(d)) b = d; else a = c;
  }
  return f(0.5 * (a + b));
}

}  // namespace

TEST_CASE("closed-form endpoints") {
  Rng rng(1);
  const Algebra m = Algebra::full(3);
  const AlgElement x = random_state(m, rng) * cplx(2.5);
  // N = M: sigma = x / tau(x) collapses the norm to tau(x)
  CHECK(amalgamated_L1p_norm(x, Inclusion::identity(m), 2.0).value == doctest::Approx(2.5).epsilon(1e-9));
  // N = C with weight 1: sigma = 1 and the norm is the Schatten norm
  CHECK(amalgamated_L1p_norm(x, Inclusion::scalar(m), 3.0).value == doctest::Approx(schatten_norm(x, 3.0)).epsilon(1e-10));
  CHECK(amalgamated_L1p_norm(x, Inclusion::scalar(m), 1.0).value == doctest::Approx(2.5));
  CHECK_THROWS(amalgamated_L1p_norm(x, Inclusion::scalar(m), 0.5));
}

TEST_CASE("product states reduce to the first factor") {
  Rng rng(2);
  const Inclusion inc = Inclusion::tensor_factor(2, 3, false);
  const AlgElement ra = random_state(Algebra::full(2), rng), rb = random_state(Algebra::full(3), rng);
  const AlgElement rho = tensor_element(ra, rb);
  for (double p : {1.5, 2.0, 4.0}) {
    const NormResult r = amalgamated_L1p_norm(rho, inc, p);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(schatten_norm(ra, p)).epsilon(1e-9));
    CHECK((r.sigma - rb).max_abs() < 1e-5);
    // no random competitor beats the optimizer
    for (int k = 0; k < 10; ++k) CHECK(direct_value(rho, inc, random_state(inc.sub(), rng), p) >= r.value - 1e-12);
  }
}

TEST_CASE("maximally entangled state") {
  const Inclusion inc = Inclusion::tensor_factor(2, 2, false);
  const AlgElement rho = AlgElement::from_matrix(inc.ambient(), max_entangled(2));
  const NormResult r = amalgamated_L1p_norm(rho, inc, 2.0);
  // one-parameter oracle over sigma = diag(t, 1 - t); the optimum is t = 1/2
  const double oracle = golden_min(
      [&](double t) {
        Mat s = Mat::Zero(2, 2);
        s(0, 0) = t;
        s(1, 1) = 1 - t;
        return direct_value(rho, inc, AlgElement::from_matrix(inc.sub(), s), 2.0);
      },
      1e-6, 1 - 1e-6);
  CHECK(r.value == doctest::Approx(oracle).epsilon(1e-9));
  CHECK(r.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  const double hp = sandwiched_renyi_conditional(max_entangled(2), 2, 2, 2.0);
  CHECK(hp >= -std::log(2.0) - 1e-9);
  CHECK(hp <= std::log(2.0) + 1e-9);
  CHECK(std::abs(sandwiched_renyi_conditional(max_entangled(2), 2, 2, 1 + 1e-4) - std::log(2.0)) <= 1e-3);
}

TEST_CASE("monotone in p and the p -> 1 derivative") {
  Rng rng(3);
  const Inclusion inc = Inclusion::tensor_factor(2, 2, true);
  // Monotonicity holds for product inputs and for N = C. Entangled inputs mix
  // a decreasing and an increasing factor (2^{1/p'} for a maximally entangled
  // state), so it is not checked there.
  const AlgElement prod = tensor_element(random_state(Algebra::full(2), rng), random_state(Algebra::full(2), rng));
  const AlgElement x = random_state(inc.ambient(), rng);
  const Inclusion c = Inclusion::scalar(inc.ambient());
  double prev_prod = 1.0 + 1e-12, prev_c = 1.0 + 1e-12;
  for (double p : {1.01, 1.5, 2.0, 3.0, 4.0}) {
    const double vp = amalgamated_L1p_norm(prod, inc, p).value;
    const double vc = amalgamated_L1p_norm(x, c, p).value;
    CHECK(vp <= prev_prod + 1e-10);
    CHECK(vc <= prev_c + 1e-10);
    prev_prod = vp;
    prev_c = vc;
  }

  for (int rep = 0; rep < 5; ++rep) {
    const AlgElement rho = random_state(inc.ambient(), rng);
    const double p = 1 + 1e-4;
    const double slope = (amalgamated_L1p_norm(rho, inc, p).value - 1.0) / (p - 1.0);
    const double want = von_neumann_entropy(inc.expect(rho)) - von_neumann_entropy(rho);
    CHECK(std::abs(slope - want) <= 2e-3);
  }
}

TEST_CASE("sandwiched conditional entropy") {
  Rng rng(4);
  const AlgElement ra = random_state(Algebra::full(2), rng), rb = random_state(Algebra::full(2), rng);
  const Mat prod = dense::kron(ra.block(0), rb.block(0));
  for (double p : {1.5, 3.0})
    CHECK(sandwiched_renyi_conditional(prod, 2, 2, p) ==
          doctest::Approx(p / (p - 1) * std::log(schatten_norm(ra, p))).epsilon(1e-8));

  const Mat rab = random_state(Algebra::full(4), rng).block(0);
  const double p = 1 + 1e-4;
  const double slope = sandwiched_renyi_conditional(rab, 2, 2, p) / p;  // log-norm / (p - 1)
  CHECK(std::abs(slope + conditional_entropy(rab, 2, 2)) <= 1e-3);
}

TEST_CASE("weighted norms") {
  Rng rng(5);
  SUBCASE("unit weight on the identity inclusion") {
    const Algebra m = Algebra::full(3);
    const AlgElement x = random_state(m, rng) * cplx(1.7);
    const Inclusion id = Inclusion::identity(m);
    CHECK(weighted_amalgamated_L1p(x, id, AlgElement::identity(m), 2.0).value == doctest::Approx(1.7).epsilon(1e-9));
  }
  SUBCASE("scalar subalgebra with a scalar weight") {
    const Algebra m = Algebra::full(2);
    const AlgElement x = random_state(m, rng);
    const Inclusion c = Inclusion::scalar(m);
    // gamma = 1 / (2 w) is forced, leaving (w gamma^{1-p} tr x^p)^{1/p}
    const double w = 0.7, p = 2.5;
    const double want = std::pow(w * std::pow(1.0 / (2 * w), 1 - p), 1 / p) * schatten_norm(x, p);
    CHECK(weighted_amalgamated_L1p(x, c, AlgElement::identity(m) * cplx(w), p).value ==
          doctest::Approx(want).epsilon(1e-9));
  }
  SUBCASE("block-scalar subalgebra of M2 + M1") {
    const Algebra m({{2, 1.0}, {1, 1.0}});
    const Algebra n({{1, 1.0}, {1, 1.0}});
    const Inclusion inc = Inclusion::from_function(n, m, [&](const AlgElement& y) {
      return AlgElement(m, {Mat::Identity(2, 2) * y.block(0)(0, 0), y.block(1)});
    });
    const AlgElement x = random_state(m, rng);
    const double p = 2.0;
    // sigma_tr = iota(E_N(1)) = (2, 1); gamma = (g, 1 - 4g) on the constraint
    const double t0 = trace(herm_power(AlgElement(Algebra::full(2), {x.block(0)}), p)).real();
    const double t1 = std::pow(x.block(1)(0, 0).real(), p);
    auto f = [&](double g) {
      const double g1 = 1 - 4 * g;
      return std::pow(2 * std::pow(g, 1 - p) * t0 + std::pow(g1, 1 - p) * t1, 1 / p);
    };
    const double oracle = golden_min(f, 1e-9, 0.25 - 1e-9);
    const NormResult r = weighted_amalgamated_L1p(x, inc, p);
    CHECK(r.value == doctest::Approx(oracle).epsilon(1e-6));
    CHECK(r.value <= f(0.2) + 1e-12);  // gamma = 1 / tau(sigma_tr)
  }
  SUBCASE("non-central weights are rejected") {
    const Inclusion inc = Inclusion::tensor_factor(2, 2, true);
    const AlgElement x = random_state(inc.ambient(), rng);
    CHECK_THROWS(weighted_amalgamated_L1p(x, inc, random_state(inc.ambient(), rng), 2.0));
  }
}
