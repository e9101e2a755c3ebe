#include "ncssa/amalgamated.hpp"

#include <cmath>
#include <limits>

#include "ncssa/random.hpp"
#include "ncssa/sdp.hpp"

namespace ncssa {

namespace {

struct Eig {
  std::vector<RVec> values;
  std::vector<Mat> vectors;
};

Eig eig(const AlgElement& x) {
  const Spectrum s = spectrum(x);
  return {s.values, s.vectors};
}

AlgElement from_eig(const Algebra& a, const Eig& e, const std::function<double(double)>& f) {
  std::vector<Mat> out;
  for (std::size_t k = 0; k < e.values.size(); ++k) {
    Eigen::VectorXcd fl = e.values[k].unaryExpr(f).cast<cplx>();
    out.push_back(e.vectors[k] * fl.asDiagonal() * e.vectors[k].adjoint());
  }
  return {a, std::move(out)};
}

// Frechet derivative Df(h)[w] for a spectral function, per block.
AlgElement frechet(const Algebra& a, const Eig& e, const AlgElement& w, const std::function<double(double)>& f,
                   const std::function<double(double)>& fp) {
  std::vector<Mat> out;
  for (std::size_t k = 0; k < e.values.size(); ++k) {
    const Mat& v = e.vectors[k];
    const Eigen::MatrixXd g = dense::divided_differences(e.values[k], f, fp);
    const Mat wl = v.adjoint() * w.block(static_cast<int>(k)) * v;
    out.push_back(v * wl.cwiseProduct(g.cast<cplx>()) * v.adjoint());
  }
  return {a, std::move(out)};
}

// The smooth objective theta -> ||y^{-s} x y^{-s}||_p, y = iota(exp(h) / tau_N(exp(h) omega)).
class L1pObjective {
 public:
  L1pObjective(const AlgElement& x, const Inclusion& inc, const AlgElement& omega, double p)
      : x_(x), inc_(inc), omega_(omega), p_(p), s_((p - 1.0) / (2.0 * p)), basis_(hermitian_basis(inc.sub())) {}

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<AlgElement>& basis() const { return basis_; }

  AlgElement sigma(const Eigen::VectorXd& theta) const {
    const AlgElement g = herm_exp(from_real_coords(basis_, theta));
    return g * cplx(1.0 / trace_product(g, omega_).real());
  }

  double operator()(const Eigen::VectorXd& theta, Eigen::VectorXd& grad) const {
    const Algebra& n = inc_.sub();
    const Algebra& m = inc_.ambient();
    const AlgElement h = from_real_coords(basis_, theta);
    const Eig eh = eig(h);
    const AlgElement gamma = from_eig(n, eh, [](double l) { return std::exp(l); });
    const double ell = trace_product(gamma, omega_).real();
    const AlgElement y = inc_(gamma * cplx(1.0 / ell));

    const Eig ey = eig(y);
    const double s = s_;
    const AlgElement a = from_eig(m, ey, [s](double l) { return std::pow(l, -s); });
    const AlgElement z = a * x_ * a;
    const Eig ez = eig(z);
    const double p = p_;
    const AlgElement zp = from_eig(m, ez, [p](double l) { return l > 0 ? std::pow(l, p) : 0.0; });
    const double phi = trace(zp).real();
    const double f = std::pow(phi, 1.0 / p);

    const AlgElement zp1 = from_eig(m, ez, [p](double l) { return l > 0 ? std::pow(l, p - 1.0) : 0.0; });
    const AlgElement half = x_ * a * zp1;
    const AlgElement w = half + half.adjoint();
    const AlgElement dfw = frechet(
        m, ey, w, [s](double l) { return std::pow(l, -s); }, [s](double l) { return -s * std::pow(l, -s - 1.0); });
    const AlgElement g = inc_.expect(dfw) * cplx(std::pow(f, 1.0 - p));

    auto ex = [](double l) { return std::exp(l); };
    const AlgElement dg = frechet(n, eh, g, ex, ex);
    const AlgElement dw = frechet(n, eh, omega_, ex, ex);
    const double c = trace_product(gamma, g).real() / ell;
    const AlgElement gh = (dg - dw * cplx(c)) * cplx(1.0 / ell);

    grad.resize(dim());
    for (int j = 0; j < dim(); ++j) grad(j) = trace_product(basis_[j], gh).real();
    return f;
  }

 private:
  AlgElement x_;
  const Inclusion& inc_;
  AlgElement omega_;
  double p_, s_;
  std::vector<AlgElement> basis_;
};

NormResult minimize_l1p(const AlgElement& x, const Inclusion& inc, const AlgElement& omega, double p, const NormOptions& opt) {
  L1pObjective obj(x, inc, omega, p);
  const Algebra& n = inc.sub();

  std::vector<Eigen::VectorXd> starts;
  {
    // warm start: E_N(x) normalized, nudged into the interior
    AlgElement e = inc.expect(x).hermitian_part();
    const double te = std::max(trace(e).real(), 1e-300);
    e = e * cplx(1.0 / te) + AlgElement::identity(n) * cplx(1e-6);
    starts.push_back(to_real_coords(obj.basis(), herm_log(e)));
  }
  starts.push_back(Eigen::VectorXd::Zero(obj.dim()));
  Rng rng(opt.seed);
  while (static_cast<int>(starts.size()) < std::max(1, opt.restarts))
    starts.push_back(to_real_coords(obj.basis(), random_hermitian(n, rng)));
  starts.resize(std::max(1, opt.restarts));

  NormResult best;
  best.value = std::numeric_limits<double>::infinity();
  double worst = -best.value;
  bool all_converged = true;
  auto fg = [&obj](const Eigen::VectorXd& t, Eigen::VectorXd& g) { return obj(t, g); };
  for (const auto& s : starts) {
    const BfgsResult r = minimize_bfgs(fg, s, opt.bfgs);
    best.iterations += r.iterations;
    ++best.restarts;
    all_converged = all_converged && r.converged;
    worst = std::max(worst, r.f);
    if (r.f < best.value) {
      best.value = r.f;
      best.sigma = obj.sigma(r.x);
    }
  }
  best.spread = worst - best.value;
  best.converged = all_converged || best.spread <= 1e-9 * std::max(1.0, best.value);
  return best;
}

}  // namespace

NormResult amalgamated_L1p_norm(const AlgElement& x, const Inclusion& inc, double p, const NormOptions& opt) {
  if (!(x.algebra() == inc.ambient())) throw ShapeError("amalgamated_L1p_norm: x is not in the ambient algebra");
  require_positive(x);
  if (!(p >= 1.0)) throw Error("amalgamated_L1p_norm needs p >= 1");
  const Algebra& n = inc.sub();
  if (p == 1.0) {
    NormResult r;
    r.value = trace(x).real();
    r.sigma = AlgElement::identity(n) * cplx(1.0 / n.trace_of_identity());
    r.converged = true;
    return r;
  }
  if (std::isinf(p)) {
    const SdpResult s = l1_inf_norm(x, inc);
    NormResult r;
    r.value = s.value;
    r.sigma = s.y * cplx(1.0 / std::max(trace(s.y).real(), 1e-300));
    r.converged = s.converged;
    r.iterations = s.iterations;
    return r;
  }
  return minimize_l1p(x.hermitian_part(), inc, AlgElement::identity(n), p, opt);
}

NormResult weighted_amalgamated_L1p(const AlgElement& x, const Inclusion& inc, const AlgElement& sigma_tr, double p,
                                    const NormOptions& opt) {
  require_positive(x);
  require_positive(sigma_tr);
  if (!(p >= 1.0) || std::isinf(p)) throw Error("weighted_amalgamated_L1p needs 1 <= p < inf");
  for (const AlgElement& b : hermitian_basis(inc.sub())) {
    const AlgElement e = inc(b);
    if ((e * sigma_tr - sigma_tr * e).max_abs() > 1e-9 * std::max(1.0, sigma_tr.max_abs()))
      throw Error("weighted_amalgamated_L1p: sigma_tr must commute with the subalgebra");
  }
  // sigma_tr commutes with iota(N), so the weight moves onto x and into the
  // normalization tau_M(iota(gamma) sigma_tr) = tau_N(gamma E_N(sigma_tr)).
  const AlgElement r = herm_power(sigma_tr, 1.0 / (2.0 * p));
  const AlgElement xt = (r * x * r).hermitian_part();
  const AlgElement omega = inc.expect(sigma_tr).hermitian_part();
  if (p == 1.0) {
    NormResult res;
    res.value = trace(xt).real();
    res.sigma = AlgElement::identity(inc.sub()) * cplx(1.0 / trace(omega).real());
    res.converged = true;
    return res;
  }
  return minimize_l1p(xt, inc, omega, p, opt);
}

NormResult weighted_amalgamated_L1p(const AlgElement& x, const Inclusion& inc, double p, const NormOptions& opt) {
  return weighted_amalgamated_L1p(x, inc, inc(inc.weight()), p, opt);
}

double sandwiched_renyi_conditional(const Mat& rho_ab, int d_a, int d_b, double p, const NormOptions& opt) {
  if (!(p > 1.0)) throw Error("sandwiched_renyi_conditional needs p > 1");
  const Inclusion inc = Inclusion::tensor_factor(d_a, d_b, false);
  const AlgElement rho = AlgElement::from_matrix(inc.ambient(), rho_ab);
  const NormResult r = amalgamated_L1p_norm(rho, inc, p, opt);
  return p / (p - 1.0) * std::log(r.value);
}

}  // namespace ncssa
