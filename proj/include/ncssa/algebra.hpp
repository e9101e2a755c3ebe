#pragma once
// Finite-dimensional von Neumann algebras: direct sums of full matrix blocks,
// each carrying a positive trace weight, and block-diagonal elements over them.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncssa {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConstructionError : Error {
  using Error::Error;
};
struct ShapeError : Error {
  using Error::Error;
};
struct PositivityError : Error {
  using Error::Error;
};
struct UnsupportedShape : Error {
  using Error::Error;
};

struct Block {
  int dim = 1;
  double weight = 1.0;
  bool operator==(const Block&) const = default;
};

/// (M, tau) with tau(x) = sum_k weight_k * tr(x_k). Immutable and cheap to copy.
///
/// Coordinates of an element are the row-major entries of each block,
/// concatenated in block order; `offset(k)` is where block k starts.
class Algebra {
 public:
  Algebra();  // the scalar algebra C with weight 1
  explicit Algebra(std::vector<Block> blocks);

  static Algebra full(int dim, double weight = 1.0);
  static Algebra diagonal(int n, double weight = 1.0);
  static Algebra scalar(double weight = 1.0) { return full(1, weight); }

  const std::vector<Block>& blocks() const { return impl_->blocks; }
  int num_blocks() const { return static_cast<int>(impl_->blocks.size()); }
  int dim(int k) const { return impl_->blocks[k].dim; }
  double weight(int k) const { return impl_->blocks[k].weight; }
  int offset(int k) const { return impl_->offsets[k]; }
  int total_dim() const { return impl_->total_dim; }
  int hilbert_dim() const { return impl_->hilbert_dim; }
  double trace_of_identity() const;

  bool is_full_block() const { return num_blocks() == 1; }
  bool has_unit_weights() const;
  /// (block, row, col) for a coordinate index.
  struct Index {
    int block, row, col;
  };
  Index index(int coord) const;
  int coord(int block, int row, int col) const { return offset(block) + row * dim(block) + col; }

  bool operator==(const Algebra& o) const { return impl_ == o.impl_ || impl_->blocks == o.impl_->blocks; }

 private:
  struct Impl {
    std::vector<Block> blocks;
    std::vector<int> offsets;
    int total_dim = 0;
    int hilbert_dim = 0;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Validating constructor; throws ConstructionError on empty lists,
/// non-positive dims or non-positive weights.
Algebra make_algebra(const std::vector<Block>& blocks);

class AlgElement {
 public:
  AlgElement() = default;
  AlgElement(Algebra algebra, std::vector<Mat> blocks);

  static AlgElement zero(const Algebra& a);
  static AlgElement identity(const Algebra& a);
  static AlgElement from_coords(const Algebra& a, const Vec& coords);
  /// Element of a single-block algebra.
  static AlgElement from_matrix(const Algebra& a, Mat m);

  const Algebra& algebra() const { return algebra_; }
  const std::vector<Mat>& blocks() const { return blocks_; }
  const Mat& block(int k) const { return blocks_[k]; }
  Mat& block(int k) { return blocks_[k]; }

  Vec coords() const;
  void write_coords(cplx* out) const;
  /// Block-diagonal dense matrix on the Hilbert space sum_k C^{d_k}.
  Mat to_dense() const;

  AlgElement adjoint() const;
  AlgElement hermitian_part() const;
  bool is_hermitian(double tol = 1e-10) const;
  double max_abs() const;

  AlgElement& operator+=(const AlgElement& o);
  AlgElement& operator-=(const AlgElement& o);
  AlgElement& operator*=(cplx s);
  friend AlgElement operator+(AlgElement a, const AlgElement& b) { return a += b; }
  friend AlgElement operator-(AlgElement a, const AlgElement& b) { return a -= b; }
  friend AlgElement operator*(AlgElement a, cplx s) { return a *= s; }
  friend AlgElement operator*(cplx s, AlgElement a) { return a *= s; }
  friend AlgElement operator*(const AlgElement& a, const AlgElement& b);

 private:
  void check_same(const AlgElement& o) const;
  Algebra algebra_;
  std::vector<Mat> blocks_;
};

/// tau(x) = sum_k w_k tr(x_k).
cplx trace(const AlgElement& x);
/// tau(x y) without forming the product.
cplx trace_product(const AlgElement& x, const AlgElement& y);
/// Re tau(x y) for Hermitian x, y; uses the dispatched dot-product kernel.
double trace_product_herm(const AlgElement& x, const AlgElement& y);

/// Per-block eigen-decomposition of the Hermitian part.
struct Spectrum {
  std::vector<RVec> values;
  std::vector<Mat> vectors;
  double max_value() const;
  double min_value() const;
};
Spectrum spectrum(const AlgElement& x);

struct PositivityTol {
  double hermitian = 1e-10;  // relative to max(1, |x|)
  double negative = 1e-10;   // relative to max(1, lambda_max)
};

/// Throws PositivityError unless x is Hermitian PSD within tolerance.
Spectrum require_positive(const AlgElement& x, const PositivityTol& tol = {});
bool is_positive(const AlgElement& x, const PositivityTol& tol = {});

/// Default relative cutoff for "zero" eigenvalues of positive operators.
inline constexpr double kSupportTol = 1e-10;

/// x^z for positive x via eigen-decomposition. Eigenvalues at or below
/// support_tol * lambda_max form the kernel: they map to 0 for every z,
/// so negative real parts give the pseudo-inverse power and z = 0 gives
/// the support projection.
AlgElement herm_power(const AlgElement& x, cplx z, double support_tol = kSupportTol);
/// log x on the support, 0 on the kernel.
AlgElement herm_log(const AlgElement& x, double support_tol = kSupportTol);
AlgElement support_projection(const AlgElement& x, double support_tol = kSupportTol);
/// f applied to the spectrum of a Hermitian x (no positivity requirement).
AlgElement herm_apply(const AlgElement& x, const std::function<double(double)>& f);
AlgElement herm_exp(const AlgElement& x);

/// Largest eigenvalue of a Hermitian element across all blocks.
double lambda_max(const AlgElement& x);
/// Operator norm (largest singular value over blocks).
double op_norm(const AlgElement& x);

// Dense single-matrix helpers shared by the channel and entropy code.
namespace dense {

Mat kron(const Mat& a, const Mat& b);
/// Partial trace of x on (C^{d_0} x ... x C^{d_{n-1}}), keeping the listed
/// subsystems in their original order.
Mat partial_trace(const Mat& x, const std::vector<int>& dims, const std::vector<int>& keep);
/// Permutes tensor factors: the result lives on factors ordered as perm.
Mat permute_subsystems(const Mat& x, const std::vector<int>& dims, const std::vector<int>& perm);
Mat herm_power(const Mat& x, cplx z, double support_tol = kSupportTol);
/// Daleckii-Krein first-order divided-difference matrix for f on eigenvalues.
Eigen::MatrixXd divided_differences(const RVec& lambda, const std::function<double(double)>& f,
                                    const std::function<double(double)>& fprime);

}  // namespace dense

}  // namespace ncssa
