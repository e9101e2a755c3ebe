#pragma once
// Small unconstrained minimizers shared by the norm, BSW and GCMI searches.

#include <Eigen/Dense>
#include <functional>

namespace ncssa {

struct BfgsOptions {
  int max_iter = 500;
  double grad_tol = 1e-10;   // on the infinity norm of the gradient
  double rel_tol = 1e-14;    // relative objective change over two steps
  double step_max = 1.0;     // cap on the first trial step length
};

struct BfgsResult {
  Eigen::VectorXd x;
  double f = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// f returns the value and writes the gradient into its second argument.
using Objective = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

BfgsResult minimize_bfgs(const Objective& f, Eigen::VectorXd x0, const BfgsOptions& opt = {});

/// Central-difference gradient wrapper for value-only objectives.
Objective numeric_gradient(std::function<double(const Eigen::VectorXd&)> f, double h = 1e-6);

}  // namespace ncssa
