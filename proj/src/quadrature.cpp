#include "ncssa/quadrature.hpp"

#include <Eigen/Dense>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace ncssa {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) j(k, k - 1) = j(k - 1, k) = k / std::sqrt(4.0 * k * k - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  GaussRule r;
  for (int k = 0; k < n; ++k) {
    r.x.push_back(es.eigenvalues()(k));
    const double v = es.eigenvectors()(0, k);
    r.w.push_back(2.0 * v * v);
  }
  // symmetrize: the eigensolver leaves ~1e-16 asymmetry in the nodes
  for (int k = 0; k < n / 2; ++k) {
    const double x = 0.5 * (r.x[n - 1 - k] - r.x[k]);
    const double w = 0.5 * (r.w[k] + r.w[n - 1 - k]);
    r.x[k] = -x;
    r.x[n - 1 - k] = x;
    r.w[k] = r.w[n - 1 - k] = w;
  }
  if (n % 2) r.x[n / 2] = 0.0;
  return r;
}

double alpha(double t) { return std::numbers::pi / (2.0 * (std::cosh(std::numbers::pi * t) + 1.0)); }

double alpha_tail(double T) {
  // 1 - tanh(u) = 2 e^{-2u} / (1 + e^{-2u}) without cancellation
  const double e = std::exp(-std::numbers::pi * T);
  return 2.0 * e / (1.0 + e);
}

std::vector<QuadNode> alpha_rule(double T, int panels, int nodes) {
  if (!(T > 0) || panels < 1) throw std::invalid_argument("alpha_rule: need T > 0 and at least one panel");
  const GaussRule g = gauss_legendre(nodes);
  const double h = 2.0 * T / panels;
  std::vector<QuadNode> out;
  out.reserve(static_cast<std::size_t>(panels) * nodes);
  for (int p = 0; p < panels; ++p) {
    const double mid = -T + (p + 0.5) * h;
    for (int k = 0; k < nodes; ++k) {
      const double t = mid + 0.5 * h * g.x[k];
      out.push_back({t, 0.5 * h * g.w[k] * alpha(t)});
    }
  }
  return out;
}

std::vector<double> parallel_map(int n, const std::function<double(int)>& f, int threads) {
  std::vector<double> out(n);
  int nt = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  nt = std::max(1, std::min(nt, n));
  if (nt == 1) {
    for (int i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto work = [&] {
    for (int i; (i = next.fetch_add(1)) < n;) {
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard lk(err_mu);
        if (!err) err = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int k = 0; k < nt; ++k) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace ncssa
