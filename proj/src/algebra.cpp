#include "ncssa/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ncssa/kernels.hpp"

namespace ncssa {

Algebra::Algebra() : Algebra(std::vector<Block>{{1, 1.0}}) {}

Algebra::Algebra(std::vector<Block> blocks) {
  if (blocks.empty()) throw ConstructionError("algebra needs at least one block");
  auto impl = std::make_shared<Impl>();
  for (const Block& b : blocks) {
    if (b.dim < 1) throw ConstructionError("block dimension must be >= 1, got " + std::to_string(b.dim));
    if (!(b.weight > 0.0) || !std::isfinite(b.weight))
      throw ConstructionError("block weight must be a positive finite number");
    impl->offsets.push_back(impl->total_dim);
    impl->total_dim += b.dim * b.dim;
    impl->hilbert_dim += b.dim;
  }
  impl->blocks = std::move(blocks);
  impl_ = std::move(impl);
}

Algebra Algebra::full(int dim, double weight) { return Algebra({{dim, weight}}); }

Algebra Algebra::diagonal(int n, double weight) {
  if (n < 1) throw ConstructionError("diagonal algebra needs n >= 1");
  return Algebra(std::vector<Block>(static_cast<std::size_t>(n), Block{1, weight}));
}

double Algebra::trace_of_identity() const {
  double s = 0.0;
  for (const Block& b : blocks()) s += b.weight * b.dim;
  return s;
}

bool Algebra::has_unit_weights() const {
  return std::all_of(blocks().begin(), blocks().end(), [](const Block& b) { return b.weight == 1.0; });
}

Algebra::Index Algebra::index(int c) const {
  int k = num_blocks() - 1;
  while (offset(k) > c) --k;
  const int local = c - offset(k);
  return {k, local / dim(k), local % dim(k)};
}

Algebra make_algebra(const std::vector<Block>& blocks) { return Algebra(blocks); }

// ---------------------------------------------------------------------------

AlgElement::AlgElement(Algebra algebra, std::vector<Mat> blocks) : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != algebra_.num_blocks())
    throw ShapeError("element has " + std::to_string(blocks_.size()) + " blocks, algebra has " +
                     std::to_string(algebra_.num_blocks()));
  for (int k = 0; k < algebra_.num_blocks(); ++k) {
    const int d = algebra_.dim(k);
    if (blocks_[k].rows() != d || blocks_[k].cols() != d)
      throw ShapeError("block " + std::to_string(k) + " must be " + std::to_string(d) + "x" + std::to_string(d));
  }
}

AlgElement AlgElement::zero(const Algebra& a) {
  std::vector<Mat> b;
  for (const Block& blk : a.blocks()) b.push_back(Mat::Zero(blk.dim, blk.dim));
  return {a, std::move(b)};
}

AlgElement AlgElement::identity(const Algebra& a) {
  std::vector<Mat> b;
  for (const Block& blk : a.blocks()) b.push_back(Mat::Identity(blk.dim, blk.dim));
  return {a, std::move(b)};
}

AlgElement AlgElement::from_coords(const Algebra& a, const Vec& c) {
  if (c.size() != a.total_dim()) throw ShapeError("coordinate vector has wrong length");
  std::vector<Mat> b;
  for (int k = 0; k < a.num_blocks(); ++k) {
    const int d = a.dim(k);
    Mat m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = c(a.offset(k) + i * d + j);
    b.push_back(std::move(m));
  }
  return {a, std::move(b)};
}

AlgElement AlgElement::from_matrix(const Algebra& a, Mat m) {
  if (!a.is_full_block()) throw ShapeError("from_matrix needs a single-block algebra");
  std::vector<Mat> b;
  b.push_back(std::move(m));
  return {a, std::move(b)};
}

Vec AlgElement::coords() const {
  Vec c(algebra_.total_dim());
  write_coords(c.data());
  return c;
}

void AlgElement::write_coords(cplx* out) const {
  for (int k = 0; k < algebra_.num_blocks(); ++k) {
    const int d = algebra_.dim(k);
    cplx* p = out + algebra_.offset(k);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) p[i * d + j] = blocks_[k](i, j);
  }
}

Mat AlgElement::to_dense() const {
  const int n = algebra_.hilbert_dim();
  Mat m = Mat::Zero(n, n);
  int at = 0;
  for (const Mat& b : blocks_) {
    m.block(at, at, b.rows(), b.cols()) = b;
    at += static_cast<int>(b.rows());
  }
  return m;
}

AlgElement AlgElement::adjoint() const {
  std::vector<Mat> b;
  for (const Mat& m : blocks_) b.push_back(m.adjoint());
  return {algebra_, std::move(b)};
}

AlgElement AlgElement::hermitian_part() const {
  std::vector<Mat> b;
  for (const Mat& m : blocks_) b.push_back(0.5 * (m + m.adjoint()));
  return {algebra_, std::move(b)};
}

bool AlgElement::is_hermitian(double tol) const {
  const double scale = std::max(1.0, max_abs());
  for (const Mat& m : blocks_)
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol * scale) return false;
  return true;
}

double AlgElement::max_abs() const {
  double s = 0.0;
  for (const Mat& m : blocks_)
    if (m.size() > 0) s = std::max(s, m.cwiseAbs().maxCoeff());
  return s;
}

void AlgElement::check_same(const AlgElement& o) const {
  if (!(algebra_ == o.algebra_)) throw ShapeError("elements belong to different algebras");
}

AlgElement& AlgElement::operator+=(const AlgElement& o) {
  check_same(o);
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += o.blocks_[k];
  return *this;
}

AlgElement& AlgElement::operator-=(const AlgElement& o) {
  check_same(o);
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= o.blocks_[k];
  return *this;
}

AlgElement& AlgElement::operator*=(cplx s) {
  for (Mat& m : blocks_) m *= s;
  return *this;
}

AlgElement operator*(const AlgElement& a, const AlgElement& b) {
  a.check_same(b);
  std::vector<Mat> out;
  for (std::size_t k = 0; k < a.blocks_.size(); ++k) out.push_back(a.blocks_[k] * b.blocks_[k]);
  return {a.algebra_, std::move(out)};
}

cplx trace(const AlgElement& x) {
  cplx s = 0.0;
  for (int k = 0; k < x.algebra().num_blocks(); ++k) s += x.algebra().weight(k) * x.block(k).trace();
  return s;
}

cplx trace_product(const AlgElement& x, const AlgElement& y) {
  if (!(x.algebra() == y.algebra())) throw ShapeError("trace_product: different algebras");
  cplx s = 0.0;
  for (int k = 0; k < x.algebra().num_blocks(); ++k) {
    // tr(XY) = sum_ij X_ij Y_ji
    s += x.algebra().weight(k) * (x.block(k).cwiseProduct(y.block(k).transpose())).sum();
  }
  return s;
}

double trace_product_herm(const AlgElement& x, const AlgElement& y) {
  if (!(x.algebra() == y.algebra())) throw ShapeError("trace_product_herm: different algebras");
  double s = 0.0;
  for (int k = 0; k < x.algebra().num_blocks(); ++k) {
    // For Hermitian Y, tr(XY) = sum_ij conj(Y_ij) X_ij; both blocks are contiguous.
    const Mat& a = y.block(k);
    const Mat& b = x.block(k);
    s += x.algebra().weight(k) *
         kernels::cdotc_re({a.data(), static_cast<std::size_t>(a.size())}, {b.data(), static_cast<std::size_t>(b.size())});
  }
  return s;
}

// ---------------------------------------------------------------------------

double Spectrum::max_value() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const RVec& v : values)
    if (v.size()) m = std::max(m, v.maxCoeff());
  return m;
}

double Spectrum::min_value() const {
  double m = std::numeric_limits<double>::infinity();
  for (const RVec& v : values)
    if (v.size()) m = std::min(m, v.minCoeff());
  return m;
}

Spectrum spectrum(const AlgElement& x) {
  Spectrum s;
  for (const Mat& m : x.blocks()) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
    s.values.push_back(es.eigenvalues());
    s.vectors.push_back(es.eigenvectors());
  }
  return s;
}

Spectrum require_positive(const AlgElement& x, const PositivityTol& tol) {
  if (!x.is_hermitian(tol.hermitian)) throw PositivityError("element is not Hermitian");
  Spectrum s = spectrum(x);
  const double top = s.max_value();
  const double lo = s.min_value();
  if (lo < -tol.negative * std::max(1.0, top))
    throw PositivityError("element has a negative eigenvalue " + std::to_string(lo));
  return s;
}

bool is_positive(const AlgElement& x, const PositivityTol& tol) {
  try {
    require_positive(x, tol);
    return true;
  } catch (const PositivityError&) {
    return false;
  }
}

namespace {

AlgElement rebuild(const AlgElement& x, const Spectrum& s, const std::function<cplx(double, bool)>& f, double cutoff) {
  std::vector<Mat> out;
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    const RVec& lam = s.values[k];
    const Mat& v = s.vectors[k];
    Eigen::VectorXcd fl(lam.size());
    for (int i = 0; i < lam.size(); ++i) fl(i) = f(lam(i), lam(i) > cutoff);
    out.push_back(v * fl.asDiagonal() * v.adjoint());
  }
  return {x.algebra(), std::move(out)};
}

}  // namespace

AlgElement herm_power(const AlgElement& x, cplx z, double support_tol) {
  const Spectrum s = require_positive(x);
  const double cutoff = support_tol * std::max(0.0, s.max_value());
  return rebuild(
      x, s, [z](double l, bool on) { return on ? std::exp(z * std::log(l)) : cplx(0.0); }, cutoff);
}

AlgElement herm_log(const AlgElement& x, double support_tol) {
  const Spectrum s = require_positive(x);
  const double cutoff = support_tol * std::max(0.0, s.max_value());
  return rebuild(
      x, s, [](double l, bool on) { return on ? cplx(std::log(l)) : cplx(0.0); }, cutoff);
}

AlgElement support_projection(const AlgElement& x, double support_tol) {
  return herm_power(x, 0.0, support_tol);
}

AlgElement herm_apply(const AlgElement& x, const std::function<double(double)>& f) {
  const Spectrum s = spectrum(x);
  return rebuild(
      x, s, [&f](double l, bool) { return cplx(f(l)); }, -std::numeric_limits<double>::infinity());
}

AlgElement herm_exp(const AlgElement& x) {
  return herm_apply(x, [](double l) { return std::exp(l); });
}

double lambda_max(const AlgElement& x) { return spectrum(x).max_value(); }

double op_norm(const AlgElement& x) {
  double m = 0.0;
  for (const Mat& b : x.blocks()) {
    if (b.size() == 0) continue;
    Eigen::JacobiSVD<Mat> svd(b);
    m = std::max(m, svd.singularValues()(0));
  }
  return m;
}

// ---------------------------------------------------------------------------

namespace dense {

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

std::vector<int> digits(int idx, const std::vector<int>& dims) {
  std::vector<int> d(dims.size());
  for (int s = static_cast<int>(dims.size()) - 1; s >= 0; --s) {
    d[s] = idx % dims[s];
    idx /= dims[s];
  }
  return d;
}

int product(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) p *= d;
  return p;
}

}  // namespace

Mat partial_trace(const Mat& x, const std::vector<int>& dims, const std::vector<int>& keep) {
  const int total = product(dims);
  if (x.rows() != total || x.cols() != total) throw ShapeError("partial_trace: matrix does not match subsystem dims");
  std::vector<bool> kept(dims.size(), false);
  for (int k : keep) {
    if (k < 0 || k >= static_cast<int>(dims.size())) throw ShapeError("partial_trace: bad subsystem index");
    kept[k] = true;
  }
  std::vector<int> kdims, tdims;
  for (std::size_t s = 0; s < dims.size(); ++s) (kept[s] ? kdims : tdims).push_back(dims[s]);
  const int kn = product(kdims), tn = product(tdims);
  // full index for every (kept, traced) pair
  std::vector<int> full(static_cast<std::size_t>(kn) * tn);
  for (int i = 0; i < total; ++i) {
    const auto dg = digits(i, dims);
    int ki = 0, ti = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      if (kept[s])
        ki = ki * dims[s] + dg[s];
      else
        ti = ti * dims[s] + dg[s];
    }
    full[static_cast<std::size_t>(ki) * tn + ti] = i;
  }
  Mat out = Mat::Zero(kn, kn);
  for (int a = 0; a < kn; ++a)
    for (int b = 0; b < kn; ++b) {
      cplx s = 0.0;
      for (int t = 0; t < tn; ++t) s += x(full[a * tn + t], full[b * tn + t]);
      out(a, b) = s;
    }
  return out;
}

Mat permute_subsystems(const Mat& x, const std::vector<int>& dims, const std::vector<int>& perm) {
  const int total = product(dims);
  if (x.rows() != total || perm.size() != dims.size()) throw ShapeError("permute_subsystems: shape mismatch");
  std::vector<int> map(total);
  for (int i = 0; i < total; ++i) {
    const auto dg = digits(i, dims);
    int ni = 0;
    for (int p : perm) ni = ni * dims[p] + dg[p];
    map[i] = ni;
  }
  Mat y(total, total);
  for (int i = 0; i < total; ++i)
    for (int j = 0; j < total; ++j) y(map[i], map[j]) = x(i, j);
  return y;
}

Mat herm_power(const Mat& x, cplx z, double support_tol) {
  const Algebra a = Algebra::full(static_cast<int>(x.rows()));
  return ncssa::herm_power(AlgElement::from_matrix(a, x), z, support_tol).block(0);
}

Eigen::MatrixXd divided_differences(const RVec& lambda, const std::function<double(double)>& f,
                                    const std::function<double(double)>& fprime) {
  const int n = static_cast<int>(lambda.size());
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double li = lambda(i), lj = lambda(j);
      const double scale = std::max({1.0, std::abs(li), std::abs(lj)});
      if (std::abs(li - lj) > 1e-10 * scale)
        g(i, j) = (f(li) - f(lj)) / (li - lj);
      else
        g(i, j) = fprime(0.5 * (li + lj));
    }
  return g;
}

}  // namespace dense

}  // namespace ncssa
