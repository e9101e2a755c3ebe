#include "ncssa/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ncssa/kernels.hpp"

namespace ncssa {

namespace {

struct CoordPair {
  int first, second;
};

// For every coordinate of a (x) b, the pair of factor coordinates.
std::vector<CoordPair> tensor_coords(const Algebra& a, const Algebra& b, const Algebra& ab) {
  std::vector<CoordPair> out(static_cast<std::size_t>(ab.total_dim()));
  for (int k1 = 0; k1 < a.num_blocks(); ++k1)
    for (int k2 = 0; k2 < b.num_blocks(); ++k2) {
      const int d1 = a.dim(k1), d2 = b.dim(k2), blk = k1 * b.num_blocks() + k2;
      for (int r1 = 0; r1 < d1; ++r1)
        for (int r2 = 0; r2 < d2; ++r2)
          for (int c1 = 0; c1 < d1; ++c1)
            for (int c2 = 0; c2 < d2; ++c2)
              out[ab.coord(blk, r1 * d2 + r2, c1 * d2 + c2)] = {a.coord(k1, r1, c1), b.coord(k2, r2, c2)};
    }
  return out;
}

}  // namespace

Algebra tensor_algebra(const Algebra& a, const Algebra& b) {
  std::vector<Block> blocks;
  for (const Block& x : a.blocks())
    for (const Block& y : b.blocks()) blocks.push_back({x.dim * y.dim, x.weight * y.weight});
  return Algebra(std::move(blocks));
}

AlgElement tensor_element(const AlgElement& x, const AlgElement& y) {
  const Algebra ab = tensor_algebra(x.algebra(), y.algebra());
  std::vector<Mat> blocks;
  for (const Mat& p : x.blocks())
    for (const Mat& q : y.blocks()) blocks.push_back(dense::kron(p, q));
  return {ab, std::move(blocks)};
}

// ---------------------------------------------------------------------------

Channel::Channel(Algebra in, Algebra out, Mat coord) : in_(std::move(in)), out_(std::move(out)), coord_(std::move(coord)) {
  if (coord_.rows() != out_.total_dim() || coord_.cols() != in_.total_dim())
    throw ShapeError("channel coordinate matrix must be " + std::to_string(out_.total_dim()) + "x" +
                     std::to_string(in_.total_dim()));
  const double scale = std::max(1.0, coord_.size() ? coord_.cwiseAbs().maxCoeff() : 0.0);

  tp_ = true;
  for (int j = 0; j < in_.total_dim() && tp_; ++j) {
    cplx t = 0.0;
    for (int l = 0; l < out_.num_blocks(); ++l)
      for (int a = 0; a < out_.dim(l); ++a) t += out_.weight(l) * coord_(out_.coord(l, a, a), j);
    const auto idx = in_.index(j);
    const double want = idx.row == idx.col ? in_.weight(idx.block) : 0.0;
    if (std::abs(t - want) > kChannelTol * scale) tp_ = false;
  }

  const Vec one = coord_ * AlgElement::identity(in_).coords();
  unital_ = (one - AlgElement::identity(out_).coords()).cwiseAbs().maxCoeff() <= kChannelTol * scale;
  cp_ = min_choi_eigenvalue(*this) >= -kChannelTol * scale;
}

AlgElement Channel::operator()(const AlgElement& x) const {
  if (!(x.algebra() == in_)) throw ShapeError("channel applied to an element of the wrong algebra");
  Vec v(in_.total_dim());
  x.write_coords(v.data());
  Vec y(out_.total_dim());
  kernels::cgemv(coord_.data(), static_cast<std::size_t>(coord_.rows()), static_cast<std::size_t>(coord_.cols()), v.data(),
                 y.data());
  return AlgElement::from_coords(out_, y);
}

Channel Channel::adjoint() const {
  // C^dag[(k,i,j),(l,a,b)] = (w_l / w_k) C[(l,b,a),(k,j,i)]
  Mat c(in_.total_dim(), out_.total_dim());
  for (int r = 0; r < in_.total_dim(); ++r) {
    const auto ri = in_.index(r);
    const int rt = in_.coord(ri.block, ri.col, ri.row);
    for (int s = 0; s < out_.total_dim(); ++s) {
      const auto si = out_.index(s);
      const int st = out_.coord(si.block, si.col, si.row);
      c(r, s) = (out_.weight(si.block) / in_.weight(ri.block)) * coord_(st, rt);
    }
  }
  return {out_, in_, std::move(c)};
}

// ---------------------------------------------------------------------------

Channel identity_channel(const Algebra& a) { return {a, a, Mat::Identity(a.total_dim(), a.total_dim())}; }

Channel compose(const Channel& second, const Channel& first) {
  if (!(second.input() == first.output())) throw ShapeError("compose: output of the first map is not the input of the second");
  return {first.input(), second.output(), second.coord() * first.coord()};
}

Channel tensor(const Channel& a, const Channel& b) {
  const Algebra in = tensor_algebra(a.input(), b.input());
  const Algebra out = tensor_algebra(a.output(), b.output());
  const auto ic = tensor_coords(a.input(), b.input(), in);
  const auto oc = tensor_coords(a.output(), b.output(), out);
  Mat c(out.total_dim(), in.total_dim());
  for (int j = 0; j < in.total_dim(); ++j)
    for (int i = 0; i < out.total_dim(); ++i)
      c(i, j) = a.coord()(oc[i].first, ic[j].first) * b.coord()(oc[i].second, ic[j].second);
  return {in, out, std::move(c)};
}

Channel id_tensor(const Channel& phi, int c_dim) { return tensor(phi, identity_channel(Algebra::full(c_dim))); }

Channel channel_from_kraus(const std::vector<Mat>& kraus, int in_dim, int out_dim) {
  if (kraus.empty()) throw ConstructionError("Kraus list is empty");
  for (const Mat& k : kraus)
    if (k.rows() != out_dim || k.cols() != in_dim) throw ShapeError("Kraus operator has the wrong shape");
  // C[(a,b),(i,j)] = sum_K K[a,i] conj(K[b,j])
  Mat c = Mat::Zero(out_dim * out_dim, in_dim * in_dim);
  for (const Mat& k : kraus)
    for (int i = 0; i < in_dim; ++i)
      for (int j = 0; j < in_dim; ++j)
        for (int a = 0; a < out_dim; ++a)
          for (int b = 0; b < out_dim; ++b) c(a * out_dim + b, i * in_dim + j) += k(a, i) * std::conj(k(b, j));
  return {Algebra::full(in_dim), Algebra::full(out_dim), std::move(c)};
}

Channel unitary_channel(const Mat& u) {
  return channel_from_kraus({u}, static_cast<int>(u.cols()), static_cast<int>(u.rows()));
}

Mat choi_matrix(const Channel& phi) {
  if (!phi.input().is_full_block() || !phi.output().is_full_block())
    throw UnsupportedShape("choi_matrix needs full matrix blocks on both sides");
  const int din = phi.input().dim(0), dout = phi.output().dim(0);
  Mat ch(din * dout, din * dout);
  for (int i = 0; i < din; ++i)
    for (int j = 0; j < din; ++j)
      for (int a = 0; a < dout; ++a)
        for (int b = 0; b < dout; ++b) ch(i * dout + a, j * dout + b) = phi.coord()(a * dout + b, i * din + j);
  return ch;
}

double min_choi_eigenvalue(const Channel& phi) {
  const Algebra& in = phi.input();
  const Algebra& out = phi.output();
  double lo = std::numeric_limits<double>::infinity();
  for (int k = 0; k < in.num_blocks(); ++k)
    for (int l = 0; l < out.num_blocks(); ++l) {
      const int din = in.dim(k), dout = out.dim(l);
      Mat ch(din * dout, din * dout);
      for (int i = 0; i < din; ++i)
        for (int j = 0; j < din; ++j)
          for (int a = 0; a < dout; ++a)
            for (int b = 0; b < dout; ++b) ch(i * dout + a, j * dout + b) = phi.coord()(out.coord(l, a, b), in.coord(k, i, j));
      Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (ch + ch.adjoint()), Eigen::EigenvaluesOnly);
      lo = std::min(lo, es.eigenvalues()(0));
    }
  return lo;
}

std::vector<Mat> kraus_operators(const Channel& phi, double tol) {
  const Mat ch = choi_matrix(phi);
  const int din = phi.input().dim(0), dout = phi.output().dim(0);
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (ch + ch.adjoint()));
  const double top = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<Mat> out;
  for (int e = static_cast<int>(es.eigenvalues().size()) - 1; e >= 0; --e) {
    const double lam = es.eigenvalues()(e);
    if (lam < -kChannelTol * top) throw PositivityError("kraus_operators: map is not completely positive");
    if (lam <= tol * top) continue;
    Mat k(dout, din);
    for (int i = 0; i < din; ++i)
      for (int a = 0; a < dout; ++a) k(a, i) = std::sqrt(lam) * es.eigenvectors()(i * dout + a, e);
    out.push_back(std::move(k));
  }
  return out;
}

Channel partial_trace_channel(const std::vector<int>& dims, const std::vector<int>& keep) {
  int total = 1, kept = 1;
  for (int d : dims) total *= d;
  for (int k : keep) kept *= dims.at(k);
  return Channel::from_function(Algebra::full(total), Algebra::full(kept), [&](const AlgElement& x) {
    return AlgElement::from_matrix(Algebra::full(kept), dense::partial_trace(x.block(0), dims, keep));
  });
}

Channel trace_channel(const Algebra& in, double out_weight) {
  const Algebra out = Algebra::scalar(out_weight);
  return Channel::from_function(in, out, [&](const AlgElement& x) {
    Mat m(1, 1);
    m(0, 0) = trace(x) / out_weight;
    return AlgElement::from_matrix(out, m);
  });
}

// ---------------------------------------------------------------------------

void Povm::validate(double tol) const {
  if (effects.empty()) throw ConstructionError("POVM has no effects");
  Mat sum = Mat::Zero(hilbert_dim, hilbert_dim);
  for (const Mat& e : effects) {
    if (e.rows() != hilbert_dim || e.cols() != hilbert_dim) throw ShapeError("POVM effect has the wrong shape");
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > tol) throw ConstructionError("POVM effect is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es(e, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -tol) throw ConstructionError("POVM effect is not positive");
    sum += e;
  }
  if ((sum - Mat::Identity(hilbert_dim, hilbert_dim)).cwiseAbs().maxCoeff() > tol)
    throw ConstructionError("POVM effects do not sum to the identity");
}

Povm Povm::projective(const Mat& basis) {
  Povm p;
  p.hilbert_dim = static_cast<int>(basis.rows());
  for (int c = 0; c < basis.cols(); ++c) p.effects.push_back(basis.col(c) * basis.col(c).adjoint());
  return p;
}

Channel povm_channel(const Povm& p) {
  p.validate();
  const int d = p.hilbert_dim, n = static_cast<int>(p.effects.size());
  const Algebra in = Algebra::full(d);
  const Algebra out = Algebra::diagonal(n);
  // tr(rho E) = sum_ij rho_ij E_ji
  Mat c(n, d * d);
  for (int x = 0; x < n; ++x)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) c(x, i * d + j) = p.effects[x](j, i);
  return {in, out, std::move(c)};
}

}  // namespace ncssa
