#include "spreg/penalties.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spreg {

namespace {
double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }
}  // namespace

void validate(const WeightedPenalty& pen) {
  if (!(pen.p >= 0.0 && pen.p <= 2.0)) {
    throw std::invalid_argument("penalty exponent p must lie in [0, 2]");
  }
}

double penalty_value(const WeightedPenalty& pen, const Sequence& u) {
  validate(pen);
  if (pen.p == 0.0) return support_count(u, pen.weights);
  return weighted_p_norm_power(u, pen.weights, pen.p);
}

double kappa(double p, double C, double L) {
  if (!(p > 1.0 && p <= 2.0)) {
    throw std::invalid_argument("kappa requires 1 < p <= 2");
  }
  if (!(C > 0.0) || !(L > 0.0)) {
    throw std::invalid_argument("kappa requires C > 0 and L > 0");
  }
  return p * (p - 1.0) / (2.0 * std::pow(C + L, 2.0 - p));
}

bool check_p_inequality(double p, double C, double L, double s, double t) {
  if (std::abs(s) > C) {
    throw std::invalid_argument("check_p_inequality: |s| must be <= C");
  }
  if (std::abs(t - s) > L) {
    throw std::invalid_argument("check_p_inequality: |t - s| must be <= L");
  }
  const double k = kappa(p, C, L);
  const double lhs = std::pow(std::abs(t), p) - std::pow(std::abs(s), p);
  const double rhs =
      p * sgn(s) * std::pow(std::abs(s), p - 1.0) * (t - s) + k * (t - s) * (t - s);
  return lhs - rhs >= -1e-12;
}

double bregman_R(const WeightedPenalty& pen, const Sequence& u, const Sequence& u_plus) {
  validate(pen);
  if (pen.p != 1.0) {
    throw std::invalid_argument("bregman_R is defined for the p = 1 penalty");
  }
  require_same_size(u, u_plus, "bregman_R");
  require_same_size(u, pen.weights.values(), "bregman_R weights");
  double acc = 0.0;
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    const double w = pen.weights[k];
    acc += w * (std::abs(u[k]) - std::abs(u_plus[k]) - sgn(u_plus[k]) * (u[k] - u_plus[k]));
  }
  return acc;
}

double taylor_T(const Operator& op, const Sequence& u, const Sequence& u_plus) {
  require_same_size(u, u_plus, "taylor_T");
  return apply(op, Sequence(u - u_plus)).squaredNorm();
}

std::vector<Eigen::Index> support_indices(const Sequence& u) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    if (u[k] != 0.0) idx.push_back(k);
  }
  return idx;
}

BregmanTaylorConstants bregman_taylor_lambda(const DenseOperator& op, const Sequence& u_plus,
                                             const WeightSequence& w, double radius_M) {
  validate(op);
  if (u_plus.size() != op.matrix.cols()) {
    throw DimensionError("bregman_taylor_lambda: u_plus does not match operator");
  }
  require_same_size(u_plus, w.values(), "bregman_taylor_lambda weights");
  if (!(radius_M > 0.0)) {
    throw std::invalid_argument("bregman_taylor_lambda requires M > 0");
  }
  const std::vector<Eigen::Index> support = support_indices(u_plus);
  if (support.empty()) {
    throw std::invalid_argument("bregman_taylor_lambda requires a nonempty support");
  }
  const double smin = restricted_smallest_singular_value(op, support);

  // 2-norm injectivity constant on the support, converted to the 1-norm via
  // ||P_I v||_1^2 <= |I| ||P_I v||_2^2.
  const double c_tilde = smin * smin / static_cast<double>(support.size());

  // Only the off-support part of K enters the cross term, so its restricted
  // norm gives a tighter (still certified) constant than the full norm.
  Eigen::MatrixXd off = op.matrix;
  for (const Eigen::Index k : support) off.col(k).setZero();
  const double k_norm = operator_norm(Operator{DenseOperator{off}});

  BregmanTaylorConstants out;
  out.c_tilde = c_tilde;
  out.k_norm = k_norm;
  out.radius_M = radius_M;
  const double a = 2.0 / c_tilde;
  const double b = (radius_M / w.w0()) * (2.0 * k_norm * k_norm / c_tilde + 1.0);
  out.lambda = 1.0 / std::max(a, b);
  return out;
}

Sequence subgradient_element(const WeightedPenalty& pen, const Sequence& u) {
  validate(pen);
  if (pen.p < 1.0) {
    throw std::invalid_argument("subgradient_element requires 1 <= p <= 2");
  }
  require_same_size(u, pen.weights.values(), "subgradient_element");
  Sequence xi(u.size());
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    if (u[k] == 0.0) {
      xi[k] = 0.0;
    } else {
      xi[k] = pen.weights[k] * pen.p * sgn(u[k]) * std::pow(std::abs(u[k]), pen.p - 1.0);
    }
  }
  return xi;
}

}  // namespace spreg
