#pragma once
// Entropies, relative entropies and the weighted Schatten norms behind them.
// Natural logarithms throughout.

#include "ncssa/inclusion.hpp"

namespace ncssa {

/// -tau(rho log rho) with 0 log 0 = 0.
double von_neumann_entropy(const AlgElement& rho);
/// H(AB) - H(B) for a state on C^{dA} (x) C^{dB} with matrix trace.
double conditional_entropy(const Mat& rho_ab, int d_a, int d_b);
/// H(rho) - H(E_N(rho)): the conditional entropy relative to a subalgebra.
double conditional_entropy(const AlgElement& rho, const Inclusion& inc);

/// tau(rho log rho - rho log sigma); +inf when supp rho is not inside supp sigma.
double relative_entropy(const AlgElement& rho, const AlgElement& sigma);

/// tau(|x|^p)^{1/p}; p = inf gives the operator norm.
double schatten_norm(const AlgElement& x, double p);
/// tau(|sigma^{1/2p} x sigma^{1/2p}|^p)^{1/p}.
double kosaki_norm(const AlgElement& x, const AlgElement& sigma, double p);
/// (p/(p-1)) log ||sigma^{-1/2p'} rho sigma^{-1/2p'}||_p for p > 1.
double sandwiched_renyi_relative(const AlgElement& rho, const AlgElement& sigma, double p);

/// ||E_N(x)||_inf.
double linf_1_norm(const AlgElement& x, const Inclusion& inc);

/// True when tau((1 - s(sigma)) rho) is negligible.
bool support_contained(const AlgElement& rho, const AlgElement& sigma, double tol = 1e-10);

}  // namespace ncssa
