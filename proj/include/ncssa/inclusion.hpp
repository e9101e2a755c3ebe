#pragma once
// Unital *-subalgebras N of M, with the trace-adjoint conditional expectation.

#include <functional>
#include <vector>

#include "ncssa/channel.hpp"

namespace ncssa {

class Inclusion {
 public:
  Inclusion() = default;
  /// Validates that embed is a unital *-homomorphism, then derives E_N and
  /// sigma_tr. Throws ConstructionError otherwise.
  explicit Inclusion(Channel embed, double tol = 1e-10);

  static Inclusion from_function(const Algebra& sub, const Algebra& ambient,
                                 const std::function<AlgElement(const AlgElement&)>& f);
  static Inclusion identity(const Algebra& a);
  /// C1 inside M; `weight` is tau_N(1).
  static Inclusion scalar(const Algebra& ambient, double weight = 1.0);
  /// M_{dA} (x) 1 (left) or 1 (x) M_{dB} (right) inside M_{dA dB}. The
  /// subalgebra carries `sub_weight` on its single block.
  static Inclusion tensor_factor(int d_a, int d_b, bool left, double sub_weight = 1.0);
  /// 1_A (x) C inside A (x) C for an arbitrary algebra A and a full block C.
  static Inclusion right_factor(const Algebra& a, int c_dim, double c_weight = 1.0);
  /// Diagonal subalgebra u diag(C^d) u* of M_d. An empty u means the identity.
  static Inclusion diagonal(int d, const Mat& u = {});
  /// x -> u (x (x) 1_m) u* for N = M_n inside M_{nm}.
  static Inclusion multiplicity(int n, int m, const Mat& u = {}, double sub_weight = 1.0);

  const Algebra& sub() const { return embed_.input(); }
  const Algebra& ambient() const { return embed_.output(); }
  const Channel& embed() const { return embed_; }
  const Channel& cond_exp() const { return cond_exp_; }
  /// sigma_tr = E_N(1), a central element of N.
  const AlgElement& weight() const { return weight_; }
  /// True when tau_N is the restriction of tau_M, i.e. sigma_tr = 1.
  bool induced() const;

  AlgElement operator()(const AlgElement& y) const { return embed_(y); }
  AlgElement expect(const AlgElement& x) const { return cond_exp_(x); }

 private:
  Channel embed_, cond_exp_;
  AlgElement weight_;
};

AlgElement cond_expectation(const Inclusion& inc, const AlgElement& x);

/// Restriction of the ambient trace to N: same block structure as `sub`, weights
/// chosen so that sigma_tr = 1.
Algebra induced_sub_algebra(const Channel& embed);

}  // namespace ncssa
