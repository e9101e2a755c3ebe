#pragma once
// Composite Gauss-Legendre rules for the kappa integral.

#include <functional>
#include <vector>

namespace ncssa {

struct QuadConfig {
  double T = 8.0;         // integrate over [-T, T]
  int panels = 32;        // panels of width 2T/panels
  int nodes = 16;         // Gauss-Legendre nodes per panel
  double tol = 1e-8;      // stop halving once kappa moves less than this
  int max_halvings = 4;
  int threads = 0;        // 0: hardware concurrency
};

struct GaussRule {
  std::vector<double> x, w;  // on [-1, 1]
};

/// Golub-Welsch on the Legendre Jacobi matrix.
GaussRule gauss_legendre(int n);

/// alpha(t) = pi / (2 (cosh(pi t) + 1)), a probability density on R.
double alpha(double t);
/// Mass of alpha outside [-T, T], i.e. 1 - tanh(pi T / 2).
double alpha_tail(double T);

struct QuadNode {
  double t, w;  // w already includes alpha(t)
};
/// Nodes and alpha-weights of the composite rule on [-T, T].
std::vector<QuadNode> alpha_rule(double T, int panels, int nodes);

/// Evaluates f at every index in [0, n) on `threads` workers. Results land in
/// index order, so the reduction that follows is deterministic.
std::vector<double> parallel_map(int n, const std::function<double(int)>& f, int threads = 0);

}  // namespace ncssa
