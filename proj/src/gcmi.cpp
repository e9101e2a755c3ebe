#include "ncssa/gcmi.hpp"

#include <cmath>
#include <limits>

#include "ncssa/entropy.hpp"
#include "ncssa/optimize.hpp"
#include "ncssa/random.hpp"

namespace ncssa {

namespace {

struct Lifted {
  Channel la, lb;
  Inclusion ca, cb, cm;

  Lifted(const Channel& phi_a, const Channel& phi_b, int c_dim)
      : la(id_tensor(phi_a, c_dim)),
        lb(id_tensor(phi_b, c_dim)),
        ca(Inclusion::right_factor(phi_a.output(), c_dim)),
        cb(Inclusion::right_factor(phi_b.output(), c_dim)),
        cm(Inclusion::right_factor(phi_a.input(), c_dim)) {}

  double operator()(const AlgElement& rho) const {
    return conditional_entropy(la(rho).hermitian_part(), ca) + conditional_entropy(lb(rho).hermitian_part(), cb) -
           conditional_entropy(rho, cm);
  }
};

void check_shapes(const Channel& phi_a, const Channel& phi_b, int c_dim) {
  if (!(phi_a.input() == phi_b.input())) throw ShapeError("gcmi: channels need a common input");
  if (!phi_a.input().is_full_block() || c_dim < 1) throw ShapeError("gcmi: M must be a full block and |C| >= 1");
}

}  // namespace

double gcmi(const AlgElement& rho_mc, const Channel& phi_a, const Channel& phi_b, int c_dim) {
  check_shapes(phi_a, phi_b, c_dim);
  if (!(rho_mc.algebra() == tensor_algebra(phi_a.input(), Algebra::full(c_dim))))
    throw ShapeError("gcmi: the state does not live on M (x) C");
  require_positive(rho_mc);
  return Lifted(phi_a, phi_b, c_dim)(rho_mc);
}

GcmiResult minimize_gcmi(const Channel& phi_a, const Channel& phi_b, int c_dim, const GcmiOptions& opt) {
  check_shapes(phi_a, phi_b, c_dim);
  const Lifted f(phi_a, phi_b, c_dim);
  const Algebra mc = tensor_algebra(phi_a.input(), Algebra::full(c_dim));
  const int d = mc.dim(0);
  const int n = 2 * d * d;

  auto state = [&](const Eigen::VectorXd& th) {
    Mat v(d, d);
    for (int i = 0; i < d * d; ++i) v.data()[i] = cplx(th(2 * i), th(2 * i + 1));
    const Mat r = v * v.adjoint();
    return AlgElement::from_matrix(mc, r / r.trace().real());
  };
  auto pack = [&](const Mat& v) {
    Eigen::VectorXd th(n);
    for (int i = 0; i < d * d; ++i) {
      th(2 * i) = v.data()[i].real();
      th(2 * i + 1) = v.data()[i].imag();
    }
    return th;
  };

  const Objective obj = numeric_gradient([&](const Eigen::VectorXd& th) { return f(state(th)); }, 1e-7);
  BfgsOptions bo;
  bo.max_iter = opt.max_iter;
  bo.grad_tol = 1e-8;

  std::vector<Eigen::VectorXd> starts;
  if (opt.init) {
    if (!(opt.init->algebra() == mc)) throw ShapeError("minimize_gcmi: initial state lives elsewhere");
    // purification sqrt(rho) is a valid Stinespring matrix for rho
    starts.push_back(pack(herm_power(*opt.init, 0.5).block(0)));
  }
  Rng rng(opt.seed);
  while (static_cast<int>(starts.size()) < std::max(1, opt.restarts)) starts.push_back(pack(ginibre(d, d, rng)));

  GcmiResult best;
  best.value = std::numeric_limits<double>::infinity();
  bool all = true;
  for (const auto& s : starts) {
    const BfgsResult r = minimize_bfgs(obj, s, bo);
    best.iterations += r.iterations;
    all = all && r.converged;
    // the start itself is a candidate; descent never reports worse, but be explicit
    const double v0 = f(state(s));
    if (r.f < best.value) {
      best.value = r.f;
      best.rho = state(r.x);
    }
    if (v0 < best.value) {
      best.value = v0;
      best.rho = state(s);
    }
  }
  best.converged = all;
  return best;
}

}  // namespace ncssa
