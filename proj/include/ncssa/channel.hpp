#pragma once
// Linear maps between algebras, stored as dense coordinate matrices.

#include <vector>

#include "ncssa/algebra.hpp"

namespace ncssa {

/// Tensor product of algebras: blocks (k1, k2) in lexicographic order with
/// dim d1*d2 and weight w1*w2.
Algebra tensor_algebra(const Algebra& a, const Algebra& b);
AlgElement tensor_element(const AlgElement& x, const AlgElement& y);

class Channel {
 public:
  Channel() = default;
  /// coord is (out.total_dim x in.total_dim); flags are computed here.
  Channel(Algebra in, Algebra out, Mat coord);

  /// Builds the coordinate matrix by applying f to every matrix unit.
  template <class F>
  static Channel from_function(const Algebra& in, const Algebra& out, F&& f) {
    Mat c(out.total_dim(), in.total_dim());
    for (int j = 0; j < in.total_dim(); ++j) {
      Vec e = Vec::Zero(in.total_dim());
      e(j) = 1.0;
      const AlgElement y = f(AlgElement::from_coords(in, e));
      if (!(y.algebra() == out)) throw ShapeError("from_function: image lies in the wrong algebra");
      c.col(j) = y.coords();
    }
    return {in, out, std::move(c)};
  }

  const Algebra& input() const { return in_; }
  const Algebra& output() const { return out_; }
  const Mat& coord() const { return coord_; }

  bool cp() const { return cp_; }
  bool tp() const { return tp_; }
  bool unital() const { return unital_; }
  bool cptp() const { return cp_ && tp_; }

  AlgElement operator()(const AlgElement& x) const;
  /// Adjoint with respect to the two traces: tau_out(Phi(x) y) = tau_in(x Phi^dag(y)).
  Channel adjoint() const;

 private:
  Algebra in_, out_;
  Mat coord_;
  bool cp_ = false, tp_ = false, unital_ = false;
};

inline constexpr double kChannelTol = 1e-10;

Channel identity_channel(const Algebra& a);
Channel compose(const Channel& second, const Channel& first);
Channel tensor(const Channel& a, const Channel& b);
/// Phi (x) id on a reference block M_c (matrix trace); reference is the right factor.
Channel id_tensor(const Channel& phi, int c_dim);

/// Kraus maps between full blocks with matrix trace. Non-TP lists are accepted
/// and flagged.
Channel channel_from_kraus(const std::vector<Mat>& kraus, int in_dim, int out_dim);
/// Kraus operators of a CP map between full blocks (from the Choi eigenvectors).
std::vector<Mat> kraus_operators(const Channel& phi, double tol = 1e-12);
Channel unitary_channel(const Mat& u);

/// sum_ij e_ij (x) Phi(e_ij); single full blocks only.
Mat choi_matrix(const Channel& phi);
/// Choi blocks for every (input block, output block) pair; used for the CP test.
double min_choi_eigenvalue(const Channel& phi);

/// Partial trace on (C^{d_0} x ... ) keeping `keep`, matrix traces on both sides.
Channel partial_trace_channel(const std::vector<int>& dims, const std::vector<int>& keep);
/// x -> tau(x) into C with the given weight on the output.
Channel trace_channel(const Algebra& in, double out_weight = 1.0);

struct Povm {
  int hilbert_dim = 0;
  std::vector<Mat> effects;

  /// Throws ConstructionError unless the effects are PSD and sum to 1.
  void validate(double tol = kChannelTol) const;
  static Povm projective(const Mat& basis);  // columns are the basis vectors
};

/// rho -> sum_x tr(rho E_x) |x><x| into the diagonal algebra C^{|X|}.
Channel povm_channel(const Povm& p);

}  // namespace ncssa
