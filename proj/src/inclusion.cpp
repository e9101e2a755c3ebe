#include "ncssa/inclusion.hpp"

#include <cmath>

namespace ncssa {

namespace {

double max_diff(const AlgElement& a, const AlgElement& b) { return (a - b).max_abs(); }

}  // namespace

Inclusion::Inclusion(Channel embed, double tol) : embed_(std::move(embed)) {
  const Algebra& n = sub();
  const Algebra& m = ambient();
  if (max_diff(embed_(AlgElement::identity(n)), AlgElement::identity(m)) > tol)
    throw ConstructionError("inclusion is not unital");

  std::vector<AlgElement> img;
  img.reserve(n.total_dim());
  for (int c = 0; c < n.total_dim(); ++c) {
    Vec e = Vec::Zero(n.total_dim());
    e(c) = 1.0;
    img.push_back(embed_(AlgElement::from_coords(n, e)));
  }
  for (int c = 0; c < n.total_dim(); ++c) {
    const auto ic = n.index(c);
    if (max_diff(img[c].adjoint(), img[n.coord(ic.block, ic.col, ic.row)]) > tol)
      throw ConstructionError("inclusion does not preserve adjoints");
    for (int d = 0; d < n.total_dim(); ++d) {
      const auto id = n.index(d);
      const AlgElement prod = img[c] * img[d];
      if (ic.block == id.block && ic.col == id.row) {
        if (max_diff(prod, img[n.coord(ic.block, ic.row, id.col)]) > tol)
          throw ConstructionError("inclusion is not multiplicative");
      } else if (prod.max_abs() > tol) {
        throw ConstructionError("inclusion is not multiplicative");
      }
    }
  }
  cond_exp_ = embed_.adjoint();
  weight_ = cond_exp_(AlgElement::identity(m));
}

Inclusion Inclusion::from_function(const Algebra& sub, const Algebra& ambient,
                                   const std::function<AlgElement(const AlgElement&)>& f) {
  return Inclusion(Channel::from_function(sub, ambient, f));
}

Inclusion Inclusion::identity(const Algebra& a) { return Inclusion(identity_channel(a)); }

Inclusion Inclusion::scalar(const Algebra& ambient, double weight) {
  return from_function(Algebra::scalar(weight), ambient,
                       [&](const AlgElement& y) { return y.block(0)(0, 0) * AlgElement::identity(ambient); });
}

Inclusion Inclusion::tensor_factor(int d_a, int d_b, bool left, double sub_weight) {
  const Algebra m = Algebra::full(d_a * d_b);
  const Algebra n = Algebra::full(left ? d_a : d_b, sub_weight);
  return from_function(n, m, [&](const AlgElement& y) {
    const Mat x = left ? dense::kron(y.block(0), Mat::Identity(d_b, d_b)) : dense::kron(Mat::Identity(d_a, d_a), y.block(0));
    return AlgElement::from_matrix(m, x);
  });
}

Inclusion Inclusion::right_factor(const Algebra& a, int c_dim, double c_weight) {
  const Algebra n = Algebra::full(c_dim, c_weight);
  const Algebra m = tensor_algebra(a, Algebra::full(c_dim));
  return from_function(n, m, [&](const AlgElement& y) {
    std::vector<Mat> blocks;
    for (const Block& b : a.blocks()) blocks.push_back(dense::kron(Mat::Identity(b.dim, b.dim), y.block(0)));
    return AlgElement(m, std::move(blocks));
  });
}

Inclusion Inclusion::diagonal(int d, const Mat& u) {
  const Algebra m = Algebra::full(d);
  const Algebra n = Algebra::diagonal(d);
  const Mat uu = u.size() ? u : Mat::Identity(d, d);
  return from_function(n, m, [&](const AlgElement& y) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = y.block(i)(0, 0);
    return AlgElement::from_matrix(m, uu * v.asDiagonal() * uu.adjoint());
  });
}

Inclusion Inclusion::multiplicity(int n, int m, const Mat& u, double sub_weight) {
  const Algebra amb = Algebra::full(n * m);
  const Algebra sub = Algebra::full(n, sub_weight);
  const Mat uu = u.size() ? u : Mat::Identity(n * m, n * m);
  return from_function(sub, amb, [&](const AlgElement& y) {
    return AlgElement::from_matrix(amb, uu * dense::kron(y.block(0), Mat::Identity(m, m)) * uu.adjoint());
  });
}

bool Inclusion::induced() const { return (weight_ - AlgElement::identity(sub())).max_abs() <= 1e-10; }

AlgElement cond_expectation(const Inclusion& inc, const AlgElement& x) { return inc.expect(x); }

Algebra induced_sub_algebra(const Channel& embed) {
  const Algebra& n = embed.input();
  std::vector<Block> blocks;
  for (int k = 0; k < n.num_blocks(); ++k) {
    Vec e = Vec::Zero(n.total_dim());
    e(n.coord(k, 0, 0)) = 1.0;
    const double w = trace(embed(AlgElement::from_coords(n, e))).real();
    blocks.push_back({n.dim(k), w});
  }
  return Algebra(std::move(blocks));
}

}  // namespace ncssa
