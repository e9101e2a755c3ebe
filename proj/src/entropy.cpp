#include "ncssa/entropy.hpp"

#include <cmath>
#include <limits>

namespace ncssa {

namespace {

// sum_k w_k sum_i f(lambda_ki) over eigenvalues above the support cutoff
template <class F>
double spectral_sum(const AlgElement& x, const Spectrum& s, F&& f) {
  const double cut = kSupportTol * std::max(0.0, s.max_value());
  double acc = 0.0;
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    double blk = 0.0;
    for (int i = 0; i < s.values[k].size(); ++i)
      if (s.values[k](i) > cut) blk += f(s.values[k](i));
    acc += x.algebra().weight(static_cast<int>(k)) * blk;
  }
  return acc;
}

AlgElement apply_power_sandwich(const AlgElement& a, const AlgElement& x) { return a * x * a; }

double singular_power_sum(const AlgElement& y, double p) {
  double acc = 0.0;
  for (int k = 0; k < y.algebra().num_blocks(); ++k) {
    Eigen::JacobiSVD<Mat> svd(y.block(k));
    double blk = 0.0;
    for (int i = 0; i < svd.singularValues().size(); ++i) blk += std::pow(svd.singularValues()(i), p);
    acc += y.algebra().weight(k) * blk;
  }
  return acc;
}

}  // namespace

double von_neumann_entropy(const AlgElement& rho) {
  const Spectrum s = require_positive(rho);
  return -spectral_sum(rho, s, [](double l) { return l * std::log(l); });
}

double conditional_entropy(const Mat& rho_ab, int d_a, int d_b) {
  if (rho_ab.rows() != d_a * d_b || rho_ab.cols() != d_a * d_b) throw ShapeError("conditional_entropy: split does not match");
  const Algebra ab = Algebra::full(d_a * d_b);
  const Algebra b = Algebra::full(d_b);
  return von_neumann_entropy(AlgElement::from_matrix(ab, rho_ab)) -
         von_neumann_entropy(AlgElement::from_matrix(b, dense::partial_trace(rho_ab, {d_a, d_b}, {1})));
}

double conditional_entropy(const AlgElement& rho, const Inclusion& inc) {
  return von_neumann_entropy(rho) - von_neumann_entropy(inc.expect(rho));
}

bool support_contained(const AlgElement& rho, const AlgElement& sigma, double tol) {
  const AlgElement p = support_projection(sigma);
  const AlgElement q = AlgElement::identity(p.algebra()) - p;
  const double leak = trace_product(q, rho).real();
  return leak <= tol * std::max(1.0, trace(rho).real());
}

double relative_entropy(const AlgElement& rho, const AlgElement& sigma) {
  const Spectrum sr = require_positive(rho);
  require_positive(sigma);
  if (!support_contained(rho, sigma)) return std::numeric_limits<double>::infinity();
  const double a = spectral_sum(rho, sr, [](double l) { return l * std::log(l); });
  const double b = trace_product(rho, herm_log(sigma)).real();
  return a - b;
}

double schatten_norm(const AlgElement& x, double p) {
  if (p < 1.0) throw Error("schatten_norm needs p >= 1");
  if (std::isinf(p)) return op_norm(x);
  if (x.is_hermitian(1e-12)) {
    const Spectrum s = spectrum(x);
    double acc = 0.0;
    for (std::size_t k = 0; k < s.values.size(); ++k)
      acc += x.algebra().weight(static_cast<int>(k)) * s.values[k].cwiseAbs().array().pow(p).sum();
    return std::pow(acc, 1.0 / p);
  }
  return std::pow(singular_power_sum(x, p), 1.0 / p);
}

double kosaki_norm(const AlgElement& x, const AlgElement& sigma, double p) {
  if (p < 1.0) throw Error("kosaki_norm needs p >= 1");
  if (std::isinf(p)) {
    const AlgElement s = support_projection(sigma);
    return op_norm(s * x * s);
  }
  const AlgElement a = herm_power(sigma, 1.0 / (2.0 * p));
  return schatten_norm(apply_power_sandwich(a, x), p);
}

double sandwiched_renyi_relative(const AlgElement& rho, const AlgElement& sigma, double p) {
  if (!(p > 1.0)) throw Error("sandwiched_renyi_relative needs p > 1");
  require_positive(rho);
  if (!support_contained(rho, sigma)) return std::numeric_limits<double>::infinity();
  const double s = (p - 1.0) / (2.0 * p);  // 1/(2p')
  const AlgElement a = herm_power(sigma, -s);
  const double n = schatten_norm(apply_power_sandwich(a, rho), p);
  return p / (p - 1.0) * std::log(n);
}

double linf_1_norm(const AlgElement& x, const Inclusion& inc) {
  require_positive(x);
  return lambda_max(inc.expect(x));
}

}  // namespace ncssa
