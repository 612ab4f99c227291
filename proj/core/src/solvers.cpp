#include "spreg/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spreg/thresholding.hpp"

namespace spreg {

namespace {
double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }
}  // namespace

void validate(const RegularizedProblem& prob) {
  validate(prob.penalty);
  if (!(prob.alpha > 0.0)) {
    throw std::invalid_argument("problem: alpha must be positive");
  }
  if (prob.delta < 0.0) {
    throw std::invalid_argument("problem: delta must be >= 0");
  }
  if (prob.data.size() != range_dim(prob.op)) {
    throw DimensionError("problem: data dimension does not match operator range");
  }
  if (prob.penalty.weights.size() != domain_dim(prob.op)) {
    throw DimensionError("problem: weight dimension does not match operator domain");
  }
}

double objective_value(const RegularizedProblem& prob, const Sequence& u) {
  return (apply(prob.op, u) - prob.data).squaredNorm() + prob.alpha * penalty_value(prob.penalty, u);
}

double optimality_certificate(const RegularizedProblem& prob, const Sequence& u) {
  validate(prob);
  const double p = prob.penalty.p;
  if (p < 1.0) {
    throw std::invalid_argument("optimality_certificate requires 1 <= p <= 2");
  }
  const Sequence grad_fit = 2.0 * adjoint_apply(prob.op, DataVector(apply(prob.op, u) - prob.data));
  double worst = 0.0;
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    const double lhs = -grad_fit[k];
    const double aw = prob.alpha * prob.penalty.weights[k];
    double dist;
    if (p == 1.0) {
      if (u[k] == 0.0) {
        dist = std::max(0.0, std::abs(lhs) - aw);  // distance to [-aw, aw]
      } else {
        dist = std::abs(lhs - aw * sgn(u[k]));
      }
    } else {
      dist = std::abs(lhs - aw * p * sgn(u[k]) * std::pow(std::abs(u[k]), p - 1.0));
    }
    worst = std::max(worst, dist);
  }
  return worst;
}

SolveResult solve_iterative(const RegularizedProblem& prob, const Sequence& u0, long max_iter,
                            double tol) {
  validate(prob);
  const double p = prob.penalty.p;
  if (p < 1.0) {
    throw UnsupportedCaseError(
        "solve_iterative supports 1 <= p <= 2 only; for p < 1 minimizers may fail to exist "
        "except in the diagonal case (use solve_diagonal)");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("solve_iterative: tol must be positive");
  if (u0.size() != domain_dim(prob.op)) {
    throw DimensionError("solve_iterative: u0 dimension mismatch");
  }

  const double knorm = operator_norm(prob.op);
  const double step = 0.9 / (2.0 * knorm * knorm);

  Sequence u = u0;
  double objective = objective_value(prob, u);
  SolveResult out;
  out.converged = false;

  long it = 0;
  for (; it < max_iter; ++it) {
    const Sequence grad = 2.0 * adjoint_apply(prob.op, DataVector(apply(prob.op, u) - prob.data));
    const Sequence v = u - step * grad;
    Sequence next(u.size());
    for (Eigen::Index k = 0; k < u.size(); ++k) {
      next[k] = threshold({p, 2.0 * step * prob.alpha * prob.penalty.weights[k]}, v[k]);
    }
    if (!next.allFinite()) {
      throw DivergenceError("solve_iterative produced non-finite iterates");
    }
    const double next_objective = objective_value(prob, next);
    if (next_objective > objective + 1e-12 * (1.0 + std::abs(objective))) {
      throw DivergenceError("solve_iterative objective increased");
    }
    const double change = (next - u).norm();
    u = next;
    objective = next_objective;
    if (change <= tol) {
      const double cert = optimality_certificate(prob, u);
      if (cert <= 10.0 * tol) {
        out.converged = true;
        out.certificate_residual = cert;
        ++it;
        break;
      }
    }
  }

  out.u = u;
  out.objective = objective;
  out.iterations = it;
  if (!out.converged) {
    out.certificate_residual = optimality_certificate(prob, u);
  }
  return out;
}

SolveResult solve_iterative(const RegularizedProblem& prob, long max_iter, double tol) {
  return solve_iterative(prob, Sequence::Zero(domain_dim(prob.op)), max_iter, tol);
}

SolveResult solve_diagonal(const RegularizedProblem& prob) {
  validate(prob);
  const auto* diag = prob.op.get_if<DiagonalOperator>();
  if (diag == nullptr) {
    throw std::invalid_argument("solve_diagonal requires a diagonal operator");
  }
  const double p = prob.penalty.p;
  Sequence u = Sequence::Zero(diag->sigma.size());
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    const double s = diag->sigma[k];
    if (s > 0.0) {
      const double beta = prob.alpha * prob.penalty.weights[k] / std::pow(s, p);
      u[k] = threshold({p, beta}, prob.data[k]) / s;
    }
  }
  SolveResult out;
  out.u = std::move(u);
  out.objective = objective_value(prob, out.u);
  out.iterations = 1;
  out.converged = true;
  out.certificate_residual = p >= 1.0 ? optimality_certificate(prob, out.u) : 0.0;
  return out;
}

SupportReport minimizer_support_check(const RegularizedProblem& prob, const SolveResult& result,
                                      double tol) {
  validate(prob);
  SupportReport report;
  report.support = support_indices(result.u);
  if (prob.penalty.p == 1.0) {
    const Sequence corr =
        adjoint_apply(prob.op, DataVector(apply(prob.op, result.u) - prob.data));
    for (const Eigen::Index k : report.support) {
      const double lhs = std::abs(2.0 * corr[k]);
      const double rhs = prob.alpha * prob.penalty.weights[k];
      if (std::abs(lhs - rhs) > 10.0 * tol) report.violations.push_back(k);
    }
  }
  return report;
}

}  // namespace spreg
