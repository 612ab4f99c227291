#pragma once

#include <vector>

#include "spreg/operators.hpp"
#include "spreg/sequences.hpp"

namespace spreg {

/// The penalty functional u -> sum w_k |u_k|^p, 0 <= p <= 2 (support count
/// at p = 0). The regularization strength alpha is kept separately in
/// RegularizedProblem.
struct WeightedPenalty {
  double p;
  WeightSequence weights;
};

void validate(const WeightedPenalty& pen);

/// Penalty value: support_count for p = 0, weighted_p_norm_power otherwise.
double penalty_value(const WeightedPenalty& pen, const Sequence& u);

/// Curvature constant of the scalar inequality
///   |t|^p - |s|^p >= p sgn(s)|s|^{p-1}(t-s) + kappa (t-s)^2
/// on |s| <= C, |t-s| <= L:  kappa = p(p-1) / (2 (C+L)^{2-p}),  1 < p <= 2.
double kappa(double p, double C, double L);

/// Checks the inequality above for one pair (s, t) with slack >= -1e-12.
bool check_p_inequality(double p, double C, double L, double s, double t);

/// Bregman distance of the weighted 1-norm at u_plus with the canonical
/// subgradient w sgn(u_plus):
///   R(u) = sum w_k|u_k| - sum w_k|u+_k| - sum w_k sgn(u+_k)(u_k - u+_k).
double bregman_R(const WeightedPenalty& pen, const Sequence& u, const Sequence& u_plus);

/// Quadratic fidelity Taylor remainder T(u) = ||K(u - u_plus)||^2.
double taylor_T(const Operator& op, const Sequence& u, const Sequence& u_plus);

/// Certified constants for the lower bound R(u) + T(u) >= lambda ||u - u+||_1^2
/// on the 1-norm ball of radius M around a finitely supported u_plus.
struct BregmanTaylorConstants {
  double c_tilde;   // 1-norm restricted injectivity constant
  double lambda;    // 1 / max(2/c_tilde, (M/w0)(2 K_norm^2/c_tilde + 1))
  double radius_M;  // 1-norm radius the bound is certified on
  double k_norm;    // norm of the operator restricted off the support
};

/// Computes the constants from the support restriction of K:
/// c_tilde = smallest_singular_value(K_I)^2 / |I| and k_norm = ||K P_{I^c}||.
/// Requires a nonempty support with full column rank (FBI) and M > 0.
BregmanTaylorConstants bregman_taylor_lambda(const DenseOperator& op, const Sequence& u_plus,
                                             const WeightSequence& w, double radius_M);

/// Canonical subgradient element w p sgn(u) |u|^{p-1} of the penalty
/// (without alpha); the selection sgn(0) = 0 is used at zeros. 1 <= p <= 2.
Sequence subgradient_element(const WeightedPenalty& pen, const Sequence& u);

/// Indices of the nonzero entries of u (exact comparison).
std::vector<Eigen::Index> support_indices(const Sequence& u);

}  // namespace spreg
