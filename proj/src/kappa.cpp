#include "ncssa/kappa.hpp"

#include <cmath>
#include <limits>

namespace ncssa {

ConditionalExpectation ConditionalExpectation::trivial(const AlgElement& sigma_b) {
  const Algebra& b = sigma_b.algebra();
  ConditionalExpectation e;
  e.r_inc = Inclusion::scalar(b, 1.0);
  const Algebra r = e.r_inc.sub();
  e.e_dag = Channel::from_function(b, r, [&](const AlgElement& x) {
    return AlgElement::identity(r) * trace_product(x, sigma_b);
  });
  return e;
}

ConditionalExpectation ConditionalExpectation::tensor(int d1, const Mat& sigma2) {
  const int d2 = static_cast<int>(sigma2.rows());
  ConditionalExpectation e;
  e.r_inc = Inclusion::tensor_factor(d1, d2, true, 1.0);
  const Algebra r = e.r_inc.sub();
  const Mat weight = dense::kron(Mat::Identity(d1, d1), sigma2);
  e.e_dag = Channel::from_function(e.r_inc.ambient(), r, [&](const AlgElement& x) {
    return AlgElement::from_matrix(r, dense::partial_trace(weight * x.block(0), {d1, d2}, {0}));
  });
  return e;
}

void ConditionalExpectation::validate(const AlgElement& sigma_b, double tol) const {
  if (!(e_dag.input() == r_inc.ambient()) || !(e_dag.output() == r_inc.sub()))
    throw ConstructionError("conditional expectation: E^dag must map B onto R");
  if (!(sigma_b.algebra() == r_inc.ambient())) throw ShapeError("conditional expectation: sigma_B lives elsewhere");
  if (!e_dag.cp()) throw ConstructionError("conditional expectation: E^dag is not completely positive");
  if (!e_dag.unital()) throw ConstructionError("conditional expectation: E^dag is not unital");
  const Channel fix = compose(e_dag, r_inc.embed());
  if ((fix.coord() - Mat::Identity(fix.coord().rows(), fix.coord().cols())).cwiseAbs().maxCoeff() > tol)
    throw ConstructionError("conditional expectation: E^dag does not fix R");
  const Channel p = compose(r_inc.embed(), e_dag);
  const Algebra& b = r_inc.ambient();
  for (int j = 0; j < b.total_dim(); ++j) {
    Vec u = Vec::Zero(b.total_dim());
    u(j) = 1.0;
    const AlgElement x = AlgElement::from_coords(b, u);
    if (std::abs(trace_product(sigma_b, p(x)) - trace_product(sigma_b, x)) > tol)
      throw ConstructionError("conditional expectation: sigma_B is not preserved");
  }
}

AlgElement ConditionalExpectation::on_density(const AlgElement& rho_b) const {
  return e_dag.adjoint()(r_inc.expect(rho_b));
}

void KappaProblem::validate() const {
  const Algebra& m = phi_a.input();
  if (!(phi_b.input() == m) || !(rho.algebra() == m) || !(sigma.algebra() == m))
    throw ShapeError("kappa: rho, sigma, Phi_A and Phi_B must share the input algebra");
  if (!phi_a.cptp() || !phi_b.cptp()) throw ConstructionError("kappa: channels must be CPTP");
  if (!(e_r.r_inc.ambient() == phi_b.output())) throw ShapeError("kappa: R must sit inside the output of Phi_B");
  require_positive(rho);
  const Spectrum s = require_positive(sigma);
  if (!(s.min_value() > kSupportTol * s.max_value())) throw PositivityError("kappa: sigma must be faithful");
  e_r.validate(phi_b(sigma).hermitian_part());
}

namespace {

bool rank_deficient(const AlgElement& x) {
  const Spectrum s = spectrum(x);
  return !(s.min_value() > kSupportTol * std::max(s.max_value(), 0.0));
}

}  // namespace

CtResult c_of_t(double t, const KappaProblem& pb, const SdpOptions& sdp) {
  const AlgElement rho_a = pb.phi_a(pb.rho).hermitian_part();
  const AlgElement sigma_a = pb.phi_a(pb.sigma).hermitian_part();
  CtResult res;
  res.support_cut = rank_deficient(rho_a) || rank_deficient(sigma_a);

  const AlgElement p = herm_power(rho_a, cplx(0.5, 0.5 * t)) * herm_power(sigma_a, cplx(-0.5, -0.5 * t));
  const AlgElement k = pb.phi_a.adjoint()(p);
  const AlgElement w = pb.phi_b(k * pb.sigma * k.adjoint()).hermitian_part();

  const Algebra& r = pb.e_r.r_inc.sub();
  if (r.total_dim() == 1) {
    // E^dag(b) = tau_B(b omega); the sup is a generalized top eigenvalue
    const AlgElement omega =
        pb.e_r.e_dag.adjoint()(AlgElement::identity(r)).hermitian_part() * cplx(1.0 / r.weight(0));
    const AlgElement h = herm_power(omega, -0.5);
    res.value = lambda_max((h * w * h).hermitian_part());
    return res;
  }
  const SdpResult s = solve_cover_sdp(pb.e_r.e_dag.adjoint(), w, sdp);
  res.value = s.value;
  res.gap = s.gap;
  return res;
}

KappaResult kappa(const KappaProblem& pb, const QuadConfig& cfg) {
  pb.validate();
  KappaResult res;
  res.T = cfg.T;
  res.support_cut = c_of_t(0.0, pb).support_cut;
  int panels = cfg.panels;
  double prev = std::numeric_limits<double>::quiet_NaN();
  double change = std::numeric_limits<double>::infinity();
  for (int h = 0; h <= cfg.max_halvings; ++h) {
    const std::vector<QuadNode> rule = alpha_rule(cfg.T, panels, cfg.nodes);
    const std::vector<double> c = parallel_map(
        static_cast<int>(rule.size()), [&](int i) { return c_of_t(rule[i].t, pb).value; }, cfg.threads);
    double k = 0.0, worst_log = 0.0;
    res.samples.clear();
    for (std::size_t i = 0; i < rule.size(); ++i) {
      if (!(c[i] > 0.0)) throw Error("kappa: c(t) is not positive, the inner solver failed");
      const double l = std::log(c[i]);
      k += rule[i].w * l;
      worst_log = std::max(worst_log, std::abs(l));
      res.samples.push_back({rule[i].t, c[i], rule[i].w});
    }
    res.kappa = k;
    res.halvings = h;
    if (h > 0) change = std::abs(k - prev);
    res.quadrature_error_estimate = (h > 0 ? change : 0.0) + alpha_tail(cfg.T) * worst_log;
    if (change < cfg.tol) {
      res.converged = true;
      break;
    }
    prev = k;
    panels *= 2;
  }
  return res;
}

}  // namespace ncssa
