#include "ncssa/constants.hpp"

#include <cmath>
#include <limits>

#include "ncssa/optimize.hpp"
#include "ncssa/random.hpp"

namespace ncssa {

namespace {

// Block-diagonal embedding of a unit-weight direct sum into one full block.
Channel block_embedding(const Algebra& a) {
  const Algebra full = Algebra::full(a.hilbert_dim());
  return Channel::from_function(a, full, [&](const AlgElement& x) { return AlgElement::from_matrix(full, x.to_dense()); });
}

Channel lift_to_full(const Channel& psi) {
  Channel out = psi;
  const Algebra& in = psi.input();
  const Algebra& o = psi.output();
  if (!in.is_full_block()) {
    if (!in.has_unit_weights()) throw UnsupportedShape("cb_constant: weighted direct sums are not supported");
    out = compose(out, block_embedding(in).adjoint());
  }
  if (!o.is_full_block()) {
    if (!o.has_unit_weights()) throw UnsupportedShape("cb_constant: weighted direct sums are not supported");
    out = compose(block_embedding(o), out);
  }
  return out;
}

AlgElement maximally_mixed(const Algebra& a) { return AlgElement::identity(a) * cplx(1.0 / a.trace_of_identity()); }

AlgElement normalized(const AlgElement& x) { return x * cplx(1.0 / trace(x).real()); }

}  // namespace

double cb_constant(const Channel& phi_a, const Channel& phi_b) {
  if (!(phi_a.input() == phi_b.input())) throw ShapeError("cb_constant: channels need a common input");
  if (!phi_a.input().is_full_block()) throw UnsupportedShape("cb_constant: the common input must be a full matrix block");
  const Channel psi = lift_to_full(compose(phi_b, phi_a.adjoint()));
  const Mat ch = choi_matrix(psi);
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (ch + ch.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

OverlapPairs frank_lieb_overlap(const Povm& p, const Povm& q) {
  p.validate();
  q.validate();
  if (p.hilbert_dim != q.hilbert_dim) throw ShapeError("frank_lieb_overlap: POVMs act on different spaces");
  Eigen::MatrixXd o(p.effects.size(), q.effects.size());
  for (std::size_t x = 0; x < p.effects.size(); ++x)
    for (std::size_t z = 0; z < q.effects.size(); ++z)
      o(x, z) = (p.effects[x].cwiseProduct(q.effects[z].transpose())).sum().real();
  OverlapPairs r;
  r.value = o.maxCoeff();
  for (int x = 0; x < o.rows(); ++x)
    for (int z = 0; z < o.cols(); ++z)
      if (o(x, z) >= r.value - 1e-12) r.argmax.emplace_back(x, z);
  return r;
}

std::pair<double, AlgElement> top_state(const AlgElement& y) {
  const Spectrum s = spectrum(y);
  int best = 0;
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    const double v = s.values[k](s.values[k].size() - 1);
    if (v > top) {
      top = v;
      best = static_cast<int>(k);
    }
  }
  AlgElement b = AlgElement::zero(y.algebra());
  const Vec v = s.vectors[best].col(s.vectors[best].cols() - 1);
  b.block(best) = v * v.adjoint() / y.algebra().weight(best);
  return {top, b};
}

OverlapResult overlap_constant(const Channel& phi_a, const Channel& phi_b, const Inclusion& r_inc, const OverlapOptions& opt) {
  if (!(phi_a.input() == phi_b.input())) throw ShapeError("overlap_constant: channels need a common input");
  if (!(r_inc.ambient() == phi_a.output())) throw ShapeError("overlap_constant: R must sit inside the output of Phi_A");
  const Channel a_to_b = compose(phi_b, phi_a.adjoint());
  const Channel b_to_a = compose(phi_a, phi_b.adjoint());
  const Algebra& b_alg = phi_b.output();

  auto objective = [&](const AlgElement& a, const AlgElement& b) { return trace_product(a_to_b(a), b).real(); };

  std::vector<AlgElement> starts = opt.seed_b;
  Rng rng(opt.seed);
  OverlapResult best;
  best.value = -std::numeric_limits<double>::infinity();
  std::vector<double> finals;

  const int total = std::max<int>(opt.restarts, static_cast<int>(opt.seed_b.size()));
  for (int r = 0; r < total; ++r) {
    AlgElement b;
    if (r < static_cast<int>(starts.size())) {
      b = starts[r];
    } else {
      const int kind = (r - static_cast<int>(starts.size())) % 3;
      if (kind == 0 && r == static_cast<int>(starts.size())) {
        b = maximally_mixed(b_alg);
      } else if (kind == 2 && best.b.blocks().size()) {
        b = best.b * cplx(0.7) + random_state(b_alg, 1, rng) * cplx(0.3);
      } else {
        b = random_state(b_alg, 1, rng);
      }
    }
    require_positive(b);

    // a-step first so that (a, b) is a feasible pair
    SdpResult s = l1_inf_norm(b_to_a(b).hermitian_part(), r_inc, opt.sdp);
    AlgElement a = s.witness;
    double val = objective(a, b);
    bool done = false;
    int rounds = 0;
    for (; rounds < opt.max_rounds && !done; ++rounds) {
      const double start = val;

      auto [tb, nb] = top_state(a_to_b(a).hermitian_part());
      const double vb = objective(a, nb);
      if (vb < val - 1e-9 * std::max(1.0, std::abs(val)))
        throw Error("overlap_constant: eigenvector step decreased the objective");
      if (vb > val) {
        b = nb;
        val = vb;
      }

      s = l1_inf_norm(b_to_a(b).hermitian_part(), r_inc, opt.sdp);
      const double va = objective(s.witness, b);
      if (va < val - std::max(1e-7, 10 * s.gap))
        throw Error("overlap_constant: SDP step decreased the objective");
      if (va > val) {
        a = s.witness;
        val = va;
      }
      if (val < start) throw Error("overlap_constant: objective sequence is not monotone");
      done = val - start <= opt.tol * std::max(1.0, std::abs(val));
    }
    best.rounds += rounds;
    ++best.restarts;
    finals.push_back(val);
    best.converged = best.converged || done;
    if (val > best.value) {
      best.value = val;
      best.a = a;
      best.b = b;
    }
  }
  for (double v : finals)
    if (v >= best.value - 1e-7) ++best.agreeing;

  const Algebra& r = r_inc.sub();
  if (r.is_full_block() && r.dim(0) == 1 && r.weight(0) == 1.0 && phi_a.input().is_full_block() &&
      phi_a.output().has_unit_weights() && b_alg.has_unit_weights())
    best.upper = cb_constant(phi_a, phi_b);
  return best;
}

SdpResult state_dependent_constant(const AlgElement& rho, const Channel& phi_a, const Channel& phi_b, const Inclusion& r_inc) {
  const AlgElement x = phi_a(phi_b.adjoint()(phi_b(rho)));
  return l1_inf_norm(x.hermitian_part(), r_inc);
}

// ---------------------------------------------------------------------------

namespace {

AlgElement floored_log(const AlgElement& x) {
  const Spectrum s = spectrum(x);
  const double floor = 1e-14 * std::max(s.max_value(), 1e-300);
  return herm_apply(x, [floor](double l) { return std::log(std::max(l, floor)); });
}

}  // namespace

double bsw_objective(const Channel& phi_a, const Channel& phi_b, const AlgElement& a, const AlgElement& b) {
  const AlgElement la = floored_log(phi_a.adjoint()(a).hermitian_part());
  const AlgElement lb = floored_log(phi_b.adjoint()(b).hermitian_part());
  return trace(herm_exp(la + lb)).real();
}

BswResult bsw_constant(const Channel& phi_a, const Channel& phi_b, int restarts, std::uint64_t seed) {
  const Inclusion r_inc = Inclusion::scalar(phi_a.output(), 1.0);
  const OverlapResult first = overlap_constant(phi_a, phi_b, r_inc);

  const Algebra& aa = phi_a.output();
  const Algebra& ba = phi_b.output();
  const auto basis_a = hermitian_basis(aa);
  const auto basis_b = hermitian_basis(ba);
  const int na = static_cast<int>(basis_a.size()), nb = static_cast<int>(basis_b.size());

  auto unpack = [&](const Eigen::VectorXd& th) {
    const AlgElement ea = herm_exp(from_real_coords(basis_a, th.head(na)));
    const AlgElement eb = herm_exp(from_real_coords(basis_b, th.tail(nb)));
    return std::pair{normalized(ea), normalized(eb)};
  };
  BswResult res;
  res.lower = -std::numeric_limits<double>::infinity();
  auto consider = [&](const AlgElement& a, const AlgElement& b) {
    const double v = bsw_objective(phi_a, phi_b, a, b);
    ++res.evaluations;
    if (v > res.lower) {
      res.lower = v;
      res.a = a;
      res.b = b;
    }
  };

  // Extreme candidates from the overlap witnesses, pulled just inside the state space.
  auto inside = [](const AlgElement& s, double eps) {
    return normalized(s) * cplx(1.0 - eps) + maximally_mixed(s.algebra()) * cplx(eps);
  };
  const AlgElement wa = normalized(first.a.hermitian_part());
  consider(inside(wa, 1e-10), inside(first.b, 1e-10));
  consider(inside(top_state(wa).second, 1e-10), inside(first.b, 1e-10));

  Rng rng(seed);
  auto f = [&](const Eigen::VectorXd& th) {
    auto [a, b] = unpack(th);
    return -bsw_objective(phi_a, phi_b, a, b);
  };
  const Objective obj = numeric_gradient(f, 1e-6);
  BfgsOptions bo;
  bo.max_iter = 150;
  bo.grad_tol = 1e-9;
  for (int r = 0; r < std::max(1, restarts); ++r) {
    Eigen::VectorXd th(na + nb);
    if (r == 0) {
      th.head(na) = to_real_coords(basis_a, herm_log(inside(wa, 1e-3)));
      th.tail(nb) = to_real_coords(basis_b, herm_log(inside(first.b, 1e-3)));
    } else if (r == 1) {
      th.setZero();
    } else {
      th.head(na) = to_real_coords(basis_a, random_hermitian(aa, rng) * cplx(2.0));
      th.tail(nb) = to_real_coords(basis_b, random_hermitian(ba, rng) * cplx(2.0));
    }
    const BfgsResult br = minimize_bfgs(obj, th, bo);
    res.evaluations += br.iterations * (2 * (na + nb) + 1);
    auto [a, b] = unpack(br.x);
    consider(a, b);
  }

  // Golden-Thompson: seeding the overlap search with the best BSW state in B
  // makes the reported upper bound dominate the lower one.
  OverlapOptions oo;
  oo.seed_b = {res.b, first.b};
  oo.restarts = 4;
  const OverlapResult second = overlap_constant(phi_a, phi_b, r_inc, oo);
  res.upper = std::max(first.value, second.value);
  return res;
}

}  // namespace ncssa
