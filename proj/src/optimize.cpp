#include "ncssa/optimize.hpp"

#include <cmath>

namespace ncssa {

BfgsResult minimize_bfgs(const Objective& f, Eigen::VectorXd x, const BfgsOptions& opt) {
  const int n = static_cast<int>(x.size());
  BfgsResult res;
  Eigen::VectorXd g(n), g_new(n);
  double fx = f(x, g);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  bool scaled = false;
  double f_prev = fx;
  int stall = 0;

  int it = 0;
  for (; it < opt.max_iter; ++it) {
    if (n == 0 || g.lpNorm<Eigen::Infinity>() <= opt.grad_tol) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd d = -h * g;
    double slope = g.dot(d);
    if (!(slope < 0.0)) {  // lost descent; restart from steepest descent
      h.setIdentity();
      scaled = false;
      d = -g;
      slope = -g.squaredNorm();
    }
    double step = 1.0;
    if (!scaled) step = std::min(1.0, opt.step_max / std::max(d.norm(), 1e-300));

    Eigen::VectorXd x_new;
    double f_new = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      x_new = x + step * d;
      f_new = f(x_new, g_new);
      if (std::isfinite(f_new) && f_new <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No decrease representable at this precision: treat as converged.
      res.converged = g.lpNorm<Eigen::Infinity>() <= std::sqrt(opt.grad_tol);
      break;
    }

    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-300 * std::max(1.0, s.squaredNorm())) {
      if (!scaled) {
        h *= sy / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Eigen::VectorXd hy = h * y;
      h += (rho * rho * y.dot(hy) + rho) * s * s.transpose() - rho * (hy * s.transpose() + s * hy.transpose());
    }
    x = x_new;
    g = g_new;
    f_prev = fx;
    fx = f_new;
    const double change = std::abs(f_prev - fx);
    if (change <= opt.rel_tol * std::max(1.0, std::abs(fx))) {
      if (++stall >= 2) {
        res.converged = true;
        ++it;
        break;
      }
    } else {
      stall = 0;
    }
  }
  res.x = x;
  res.f = fx;
  res.grad_norm = g.size() ? g.lpNorm<Eigen::Infinity>() : 0.0;
  res.iterations = it;
  return res;
}

Objective numeric_gradient(std::function<double(const Eigen::VectorXd&)> f, double h) {
  return [f = std::move(f), h](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    const double fx = f(x);
    g.resize(x.size());
    Eigen::VectorXd xp = x;
    for (int i = 0; i < x.size(); ++i) {
      const double xi = x(i);
      xp(i) = xi + h;
      const double fp = f(xp);
      xp(i) = xi - h;
      const double fm = f(xp);
      xp(i) = xi;
      g(i) = (fp - fm) / (2 * h);
    }
    return fx;
  };
}

}  // namespace ncssa
