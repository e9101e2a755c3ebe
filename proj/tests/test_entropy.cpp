#include <doctest.h>

#include <cmath>
#include <limits>

#include "ncssa/entropy.hpp"
#include "ncssa/random.hpp"

using namespace ncssa;

namespace {

AlgElement diag_state(const std::vector<double>& p) {
  Mat m = Mat::Zero(p.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m(i, i) = p[i];
  return AlgElement::from_matrix(Algebra::full(static_cast<int>(p.size())), m);
}

std::vector<double> random_simplex(int n, Rng& rng) {
  std::vector<double> p(n);
  double s = 0;
  for (double& x : p) s += (x = 0.05 + rng.uniform());
  for (double& x : p) x /= s;
  return p;
}

Mat max_entangled(int d) {
  Vec v = Vec::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(double(d));
  return v * v.adjoint();
}

}  // namespace

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(AlgElement::identity(Algebra::full(3)) * cplx(1.0 / 3)) == doctest::Approx(std::log(3.0)));
  CHECK(von_neumann_entropy(diag_state({1.0, 0.0, 0.0})) == doctest::Approx(0.0));
  const double h = -0.25 * std::log(0.25) - 0.75 * std::log(0.75);
  CHECK(von_neumann_entropy(diag_state({0.25, 0.75})) == doctest::Approx(h).epsilon(1e-14));
  CHECK_THROWS_AS(von_neumann_entropy(diag_state({1.5, -0.5})), PositivityError);

  Rng rng(1);
  for (int rep = 0; rep < 200; ++rep) {
    const int d = 2 + rep % 4;
    const AlgElement rho = random_state(Algebra::full(d), 1 + rep % d, rng);
    const double s = von_neumann_entropy(rho);
    CHECK(s >= -1e-12);
    CHECK(s <= std::log(double(d)) + 1e-12);
  }
}

TEST_CASE("conditional entropy") {
  Rng rng(2);
  const Mat ra = random_state(Algebra::full(2), rng).block(0);
  const Mat rb = random_state(Algebra::full(3), rng).block(0);
  CHECK(conditional_entropy(dense::kron(ra, rb), 2, 3) ==
        doctest::Approx(von_neumann_entropy(AlgElement::from_matrix(Algebra::full(2), ra))).epsilon(1e-12));
  CHECK(conditional_entropy(max_entangled(2), 2, 2) == doctest::Approx(-std::log(2.0)).epsilon(1e-12));

  const Mat rab = random_state(Algebra::full(6), rng).block(0);
  Mat marg = Mat::Zero(3, 3);  // oracle: explicit index sum over A
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) marg(i, j) += rab(a * 3 + i, a * 3 + j);
  const double want = von_neumann_entropy(AlgElement::from_matrix(Algebra::full(6), rab)) -
                      von_neumann_entropy(AlgElement::from_matrix(Algebra::full(3), marg));
  CHECK(conditional_entropy(rab, 2, 3) == doctest::Approx(want).epsilon(1e-12));
  CHECK_THROWS(conditional_entropy(rab, 2, 2));
}

TEST_CASE("relative entropy") {
  Rng rng(3);
  const AlgElement rho = random_state(Algebra::full(3), rng);
  CHECK(std::abs(relative_entropy(rho, rho)) < 1e-12);
  CHECK(relative_entropy(diag_state({1, 0}), diag_state({0.5, 0.5})) == doctest::Approx(std::log(2.0)));
  CHECK(relative_entropy(diag_state({0.5, 0.5}), diag_state({1, 0})) == std::numeric_limits<double>::infinity());

  for (int rep = 0; rep < 20; ++rep) {
    const auto p = random_simplex(4, rng), q = random_simplex(4, rng);
    double kl = 0;
    for (int i = 0; i < 4; ++i) kl += p[i] * std::log(p[i] / q[i]);
    CHECK(relative_entropy(diag_state(p), diag_state(q)) == doctest::Approx(kl).epsilon(1e-12));
  }

  // strict positivity off the diagonal, zero on it
  for (int rep = 0; rep < 20; ++rep) {
    const AlgElement s = random_state(Algebra::full(3), rng);
    const AlgElement near = s * cplx(1.0 - 1e-3) + random_state(Algebra::full(3), rng) * cplx(1e-3);
    CHECK(relative_entropy(near, s) > 0.0);
    CHECK(std::abs(relative_entropy(s, s)) < 1e-12);
  }
}

TEST_CASE("data processing and chain rule") {
  Rng rng(4);
  for (int rep = 0; rep < 100; ++rep) {
    const AlgElement rho = random_state(Algebra::full(3), rng), sigma = random_state(Algebra::full(3), rng);
    const Channel phi = random_channel(3, 2 + rep % 3, 2, rng);
    CHECK(relative_entropy(phi(rho), phi(sigma)) <= relative_entropy(rho, sigma) + 1e-9);
  }
  const Inclusion inc = Inclusion::tensor_factor(2, 3, true, 3.0);
  for (int rep = 0; rep < 20; ++rep) {
    const AlgElement rho = random_state(inc.ambient(), rng);
    const AlgElement er = inc(inc.expect(rho));
    const AlgElement sigma = inc(random_state(inc.sub(), rng));
    CHECK(std::abs(relative_entropy(rho, er) - (relative_entropy(rho, sigma) - relative_entropy(er, sigma))) < 1e-9);
    CHECK(relative_entropy(rho, er) == doctest::Approx(-conditional_entropy(rho, inc)).epsilon(1e-9));
  }
}

TEST_CASE("weighted Schatten norms") {
  Rng rng(5);
  const AlgElement rho = random_state(Algebra::full(3), rng), sigma = random_state(Algebra::full(3), rng);
  const AlgElement s = herm_power(sigma, -0.5);
  CHECK(kosaki_norm(s * rho * s, sigma, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  const AlgElement x = random_hermitian(Algebra::full(3), rng);
  CHECK(kosaki_norm(x, sigma, std::numeric_limits<double>::infinity()) == doctest::Approx(op_norm(x)));
  CHECK(schatten_norm(x, 2.0) == doctest::Approx(std::sqrt(trace(x * x).real())));

  const auto p = random_simplex(3, rng), q = random_simplex(3, rng);
  std::vector<double> xr(3);
  double want = 0;
  for (int i = 0; i < 3; ++i) {
    xr[i] = p[i] / q[i];
    want += xr[i] * xr[i] * q[i];
  }
  CHECK(kosaki_norm(diag_state(xr), diag_state(q), 2.0) == doctest::Approx(std::sqrt(want)).epsilon(1e-12));
  // (sum rho_i^2 / sigma_i)^{1/2} for sigma^{-1/2} rho sigma^{-1/2}
  double alt = 0;
  for (int i = 0; i < 3; ++i) alt += p[i] * p[i] / q[i];
  CHECK(std::sqrt(alt) == doctest::Approx(std::sqrt(want)).epsilon(1e-12));
}

TEST_CASE("sandwiched Renyi divergence") {
  Rng rng(6);
  const AlgElement rho = random_state(Algebra::full(3), rng), sigma = random_state(Algebra::full(3), rng);
  for (double p : {1.5, 2.0, 5.0}) CHECK(std::abs(sandwiched_renyi_relative(rho, rho, p)) < 1e-10);

  const auto a = random_simplex(4, rng), b = random_simplex(4, rng);
  for (double p : {1.2, 2.0, 3.5}) {
    double s = 0;
    for (int i = 0; i < 4; ++i) s += std::pow(a[i], p) * std::pow(b[i], 1 - p);
    CHECK(sandwiched_renyi_relative(diag_state(a), diag_state(b), p) ==
          doctest::Approx(std::log(s) / (p - 1)).epsilon(1e-11));
  }
  const double d = relative_entropy(rho, sigma);
  CHECK(std::abs(sandwiched_renyi_relative(rho, sigma, 1 + 1e-4) - d) <= 1e-3);
  // nonincreasing as p decreases to 1
  CHECK(sandwiched_renyi_relative(rho, sigma, 2.0) >= sandwiched_renyi_relative(rho, sigma, 1.5) - 1e-12);
  CHECK(sandwiched_renyi_relative(rho, sigma, 1.5) >= d - 1e-12);
  CHECK(sandwiched_renyi_relative(diag_state({0.5, 0.5}), diag_state({1, 0}), 2.0) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("L_inf^1 norm") {
  const Inclusion c = Inclusion::scalar(Algebra::full(2));
  CHECK(linf_1_norm(AlgElement::identity(c.ambient()), c) == doctest::Approx(op_norm(c.weight())));
  Rng rng(7);
  CHECK(linf_1_norm(random_state(c.ambient(), rng), c) == doctest::Approx(1.0));

  const Inclusion left = Inclusion::tensor_factor(2, 3, true);
  const AlgElement x = random_state(left.ambient(), rng);
  const Mat pt = dense::partial_trace(x.block(0), {2, 3}, {0});
  Eigen::SelfAdjointEigenSolver<Mat> es(pt);
  CHECK(linf_1_norm(x, left) == doctest::Approx(es.eigenvalues().maxCoeff()).epsilon(1e-12));
}
