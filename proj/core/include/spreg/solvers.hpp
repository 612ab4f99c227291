#pragma once

#include <vector>

#include "spreg/operators.hpp"
#include "spreg/penalties.hpp"
#include "spreg/sequences.hpp"

namespace spreg {

/// One regularized least-squares instance:
///   minimize  ||K u - data||^2 + alpha * sum w_k |u_k|^p.
/// `delta` records the noise level of the data; it is informational for the
/// solvers and consumed by the experiment harness.
struct RegularizedProblem {
  Operator op;
  DataVector data;
  double delta = 0.0;
  double alpha = 1.0;
  WeightedPenalty penalty;
};

void validate(const RegularizedProblem& prob);

struct SolveResult {
  Sequence u;
  double objective = 0.0;
  long iterations = 0;
  double certificate_residual = 0.0;  // violation of the first-order optimality inclusion
  bool converged = false;
};

/// ||K u - data||^2 + alpha * penalty(u).
double objective_value(const RegularizedProblem& prob, const Sequence& u);

/// Proximal-gradient (iterative thresholding) minimization for 1 <= p <= 2:
///   u <- threshold_{p, 2 s alpha w_k}( u - s * 2 K*(K u - data) ),
/// step s = 0.9 / (2 ||K||^2). Stops when both the iterate change is <= tol
/// and the optimality certificate is <= 10 tol. The objective is checked to
/// be non-increasing every iteration; p < 1 is rejected (minimizers may not
/// exist off the diagonal case).
SolveResult solve_iterative(const RegularizedProblem& prob, const Sequence& u0, long max_iter,
                            double tol);

/// Same with u0 = 0.
SolveResult solve_iterative(const RegularizedProblem& prob, long max_iter = 200000,
                            double tol = 1e-10);

/// Exact component-wise minimizer for diagonal operators, any 0 <= p <= 2:
///   u_k = (1/sigma_k) * threshold_{p, alpha w_k / sigma_k^p}(data_k),
/// and u_k = 0 where sigma_k = 0. Global minimizer also in the nonconvex
/// range p < 1.
SolveResult solve_diagonal(const RegularizedProblem& prob);

/// Distance of -2 K*(K u - data) from alpha w p Sgn(u) |u|^{p-1} in the
/// sup norm; zero exactly at stationary points (global minimizers for
/// p >= 1 by convexity). At p = 1 the distance at u_k = 0 is measured to
/// the interval [-alpha w_k, alpha w_k].
double optimality_certificate(const RegularizedProblem& prob, const Sequence& u);

/// Support diagnostics of a converged result. For p = 1 every support index
/// must satisfy |2 (K*(K u - data))_k| = alpha w_k; indices violating that
/// beyond 10*tol are reported (and must be empty for a true minimizer).
struct SupportReport {
  std::vector<Eigen::Index> support;
  std::vector<Eigen::Index> violations;
};

SupportReport minimizer_support_check(const RegularizedProblem& prob, const SolveResult& result,
                                      double tol);

}  // namespace spreg
