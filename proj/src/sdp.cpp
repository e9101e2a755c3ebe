#include "ncssa/sdp.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ncssa/kernels.hpp"

namespace ncssa {

std::vector<AlgElement> hermitian_basis(const Algebra& a) {
  std::vector<AlgElement> out;
  const double r = std::numbers::sqrt2 / 2;
  for (int k = 0; k < a.num_blocks(); ++k) {
    const int d = a.dim(k);
    auto unit = [&](auto fill) {
      AlgElement e = AlgElement::zero(a);
      fill(e.block(k));
      out.push_back(std::move(e));
    };
    for (int i = 0; i < d; ++i) unit([&](Mat& m) { m(i, i) = 1.0; });
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        unit([&](Mat& m) { m(i, j) = m(j, i) = r; });
        unit([&](Mat& m) {
          m(i, j) = cplx(0.0, r);
          m(j, i) = cplx(0.0, -r);
        });
      }
  }
  return out;
}

AlgElement from_real_coords(const std::vector<AlgElement>& basis, const Eigen::VectorXd& theta) {
  AlgElement h = AlgElement::zero(basis.front().algebra());
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (theta(j) != 0.0) h += basis[j] * cplx(theta(j));
  return h;
}

Eigen::VectorXd to_real_coords(const std::vector<AlgElement>& basis, const AlgElement& h) {
  Eigen::VectorXd t(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    double s = 0.0;
    for (int k = 0; k < h.algebra().num_blocks(); ++k)
      s += (basis[j].block(k).cwiseProduct(h.block(k).transpose())).sum().real();
    t(j) = s;
  }
  return t;
}

namespace {

struct Barrier {
  std::vector<Mat> s_inv;       // S_l^{-1}
  std::vector<Mat> s_inv_half;  // S_l^{-1/2}
  double logdet = 0.0;
};

// Returns false when some block of S is not positive definite.
bool factor(const AlgElement& s, Barrier& b) {
  b.s_inv.clear();
  b.s_inv_half.clear();
  b.logdet = 0.0;
  for (const Mat& m : s.blocks()) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
    const RVec& lam = es.eigenvalues();
    if (!(lam(0) > 0.0)) return false;
    const Mat& v = es.eigenvectors();
    b.s_inv.push_back(v * lam.cwiseInverse().cast<cplx>().asDiagonal() * v.adjoint());
    b.s_inv_half.push_back(v * lam.cwiseSqrt().cwiseInverse().cast<cplx>().asDiagonal() * v.adjoint());
    b.logdet += lam.array().log().sum();
  }
  return true;
}

// Complementary slackness refinement of a dual witness. At the optimum a lives
// on the kernel of S = L(Y) - X, so a is re-solved there: the barrier witness
// restricted to the near-kernel of S is corrected by the least-squares
// solution of L^dag(a) = 1, clipped to a >= 0 and rescaled into L^dag(a) <= 1.
AlgElement polish_dual(const Channel& l_adj, const AlgElement& s, const AlgElement& a0, double cut,
                       const std::vector<AlgElement>& n_basis, const Eigen::VectorXd& target) {
  const Algebra& m_alg = s.algebra();
  std::vector<Mat> u(m_alg.num_blocks());
  for (int k = 0; k < m_alg.num_blocks(); ++k) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (s.block(k) + s.block(k).adjoint()));
    int keep = 0;
    while (keep < es.eigenvalues().size() && es.eigenvalues()(keep) < cut) ++keep;
    u[k] = es.eigenvectors().leftCols(keep);
  }
  // real coordinates of Hermitian Z_k on the kept subspaces
  std::vector<AlgElement> cols;
  std::vector<std::pair<int, Mat>> units;
  for (int k = 0; k < m_alg.num_blocks(); ++k) {
    const int d = static_cast<int>(u[k].cols());
    if (d == 0) continue;
    for (const AlgElement& e : hermitian_basis(Algebra::full(d))) units.emplace_back(k, e.block(0));
  }
  if (units.empty()) return a0;
  const int m = static_cast<int>(units.size());
  Eigen::MatrixXd a_mat(target.size(), m);
  Eigen::VectorXd z0(m);
  for (int j = 0; j < m; ++j) {
    const auto& [k, e] = units[j];
    AlgElement a = AlgElement::zero(m_alg);
    a.block(k) = u[k] * e * u[k].adjoint();
    a_mat.col(j) = to_real_coords(n_basis, l_adj(a));
    z0(j) = (e.adjoint() * u[k].adjoint() * a0.block(k) * u[k]).trace().real();
  }
  const Eigen::VectorXd z = z0 + a_mat.completeOrthogonalDecomposition().solve(target - a_mat * z0);
  AlgElement a = AlgElement::zero(m_alg);
  std::vector<Mat> zk(m_alg.num_blocks());
  for (int k = 0; k < m_alg.num_blocks(); ++k) zk[k] = Mat::Zero(u[k].cols(), u[k].cols());
  for (int j = 0; j < m; ++j) zk[units[j].first] += z(j) * units[j].second;
  for (int k = 0; k < m_alg.num_blocks(); ++k) {
    if (zk[k].size() == 0) continue;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (zk[k] + zk[k].adjoint()));
    const Mat zp = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cast<cplx>().asDiagonal() *
                   es.eigenvectors().adjoint();
    a.block(k) = u[k] * zp * u[k].adjoint();
  }
  const double top = lambda_max(l_adj(a));
  if (top > 0.0) a *= cplx(1.0 / top);
  return a;
}

}  // namespace

SdpResult solve_cover_sdp(const Channel& l, const AlgElement& x_in, const SdpOptions& opt) {
  const Algebra& n_alg = l.input();
  const Algebra& m_alg = l.output();
  if (!(x_in.algebra() == m_alg)) throw ShapeError("solve_cover_sdp: X is not in the output algebra of L");
  require_positive(x_in);

  const double scale = lambda_max(x_in);
  if (!(scale > 1e-300)) {
    SdpResult zero;
    zero.y = AlgElement::zero(n_alg);
    zero.witness = AlgElement::zero(m_alg);
    zero.converged = true;
    return zero;
  }
  const AlgElement x = x_in * cplx(1.0 / scale);

  const auto basis = hermitian_basis(n_alg);
  const int n = static_cast<int>(basis.size());
  std::vector<AlgElement> lg;
  Eigen::VectorXd cost(n);
  for (int j = 0; j < n; ++j) {
    lg.push_back(l(basis[j]));
    cost(j) = trace(basis[j]).real();
  }

  const AlgElement one_n = AlgElement::identity(n_alg);
  const Channel l_adj = l.adjoint();
  const Eigen::VectorXd target = to_real_coords(basis, one_n);
  const double m1 = spectrum(l(one_n)).min_value();
  if (!(m1 > 0.0)) throw Error("solve_cover_sdp: L(1) is not invertible, no strictly feasible start");
  Eigen::VectorXd theta = to_real_coords(basis, one_n) * (2.0 * (1.0 + 1e-3) / m1);

  double nu = 0.0;
  for (const Block& b : m_alg.blocks()) nu += b.dim;

  auto slack = [&](const Eigen::VectorXd& th) {
    AlgElement s = x * cplx(-1.0);
    for (int j = 0; j < n; ++j)
      if (th(j) != 0.0) s += lg[j] * cplx(th(j));
    return s;
  };

  Barrier bar;
  if (!factor(slack(theta), bar)) throw Error("solve_cover_sdp: starting point is not strictly feasible");

  double t = nu / std::max(cost.dot(theta), 1e-3);
  SdpResult res;
  const kernels::KernelTable& kt = kernels::active();
  int len = 0;
  for (const Block& b : m_alg.blocks()) len += b.dim * b.dim;
  Mat q(len, n);

  int newton = 0;
  double best_dual = -1.0, best_primal = std::numeric_limits<double>::infinity();
  while (newton < opt.max_newton) {
    // centering at t
    for (int inner = 0; newton < opt.max_newton && inner < opt.max_centering; ++newton, ++inner) {
      Eigen::VectorXd grad = t * cost;
      for (int j = 0; j < n; ++j) {
        int at = 0;
        for (int k = 0; k < m_alg.num_blocks(); ++k) {
          const int d = m_alg.dim(k);
          const Mat qj = bar.s_inv_half[k] * lg[j].block(k) * bar.s_inv_half[k];
          Eigen::Map<Mat>(q.col(j).data() + at, d, d) = qj;
          grad(j) -= qj.trace().real();
          at += d * d;
        }
      }
      Eigen::MatrixXd h(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) h(i, j) = h(j, i) = kt.cdotc_re(q.col(i).data(), q.col(j).data(), len);
      const Eigen::VectorXd step = -h.ldlt().solve(grad);
      const double dec2 = -grad.dot(step);
      if (!std::isfinite(dec2)) throw Error("solve_cover_sdp: Newton system is singular");
      if (dec2 < 1e-12) break;

      const double f0 = t * cost.dot(theta) - bar.logdet;
      double alpha = dec2 > 0.25 ? 1.0 / (1.0 + std::sqrt(dec2)) : 1.0;
      Barrier trial;
      Eigen::VectorXd cand;
      bool ok = false;
      for (int ls = 0; ls < 60; ++ls) {
        cand = theta + alpha * step;
        if (factor(slack(cand), trial) && t * cost.dot(cand) - trial.logdet <= f0 - 0.25 * alpha * dec2) {
          ok = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!ok) break;  // numerically centered
      theta = cand;
      bar = std::move(trial);
    }

    // dual witness a_l = S_l^{-1} / (t w_l), scaled into the feasible set
    std::vector<Mat> a_blocks;
    for (int k = 0; k < m_alg.num_blocks(); ++k) {
      const Mat sk = bar.s_inv[k] / (t * m_alg.weight(k));
      a_blocks.push_back(0.5 * (sk + sk.adjoint()));
    }
    AlgElement a(m_alg, std::move(a_blocks));
    const double top = lambda_max(l_adj(a));
    if (top > 1.0) a *= cplx(1.0 / top);
    // S is formed by cancellation, so late witnesses lose about eps * t in
    // relative accuracy: keep the best certificate on each side, and once the
    // kernel of S has separated, also try the polished witness.
    double dual = trace_product(a, x).real();
    if (t * cost.dot(theta) > 1e4) {
      const AlgElement ap = polish_dual(l_adj, slack(theta), a, 1.0 / std::sqrt(t), basis, target);
      const double dp = trace_product(ap, x).real();
      if (dp > dual) {
        dual = dp;
        a = ap;
      }
    }
    const double primal = cost.dot(theta);
    if (dual > best_dual) {
      best_dual = dual;
      res.witness = a;
    }
    if (primal < best_primal) {
      best_primal = primal;
      res.y = from_real_coords(basis, theta);
    }
    res.primal = best_primal;
    res.value = best_dual;
    res.gap = best_primal - best_dual;
    if (res.gap <= opt.gap_tol) {
      res.converged = true;
      break;
    }
    if (nu / t < 1e-14 || newton >= opt.max_newton) {
      res.converged = res.gap <= opt.accept_tol;
      break;
    }
    t *= opt.growth;
  }
  res.iterations = newton;
  res.y *= cplx(scale);
  res.primal *= scale;
  res.value *= scale;
  res.gap *= scale;
  return res;
}

SdpResult l1_inf_norm(const AlgElement& x, const Inclusion& inc, const SdpOptions& opt) {
  return solve_cover_sdp(inc.embed(), x, opt);
}

}  // namespace ncssa
