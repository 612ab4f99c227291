#pragma once

#include <utility>
#include <vector>

#include "spreg/operators.hpp"
#include "spreg/penalties.hpp"
#include "spreg/sequences.hpp"

namespace spreg {

/// Representability certificate for a candidate solution u_plus: a data
/// vector theta with K* theta ~ w sgn(u_plus) |u_plus|^{p-1}, the sup-norm
/// misfit of that equation, and the constant rho = ||theta|| * p / 2 that
/// enters the error bounds (p/2 = 1/2 at p = 1).
struct SourceCertificate {
  DataVector theta;
  double residual = 0.0;
  double rho = 0.0;
};

/// Least-squares solve of K* theta = w sgn(u_plus)|u_plus|^{p-1} (SVD based;
/// exact component-wise division for diagonal operators). The condition
/// "holds" when residual <= 1e-8 * (1 + ||xi||_inf).
SourceCertificate verify_source(const Operator& op, const Sequence& u_plus,
                                const WeightedPenalty& pen);

bool source_condition_holds(const SourceCertificate& cert, const Operator& op,
                            const Sequence& u_plus, const WeightedPenalty& pen);

/// Builds u_plus with the given support/signs/magnitudes on a diagonal
/// operator and the exact certificate theta_k = xi_k / sigma_k. All support
/// indices must have sigma_k > 0. Indices are zero based.
std::pair<Sequence, SourceCertificate> construct_sourced_instance(
    const DiagonalOperator& op, const std::vector<Eigen::Index>& support,
    const std::vector<int>& signs, const std::vector<double>& magnitudes,
    const WeightedPenalty& pen);

/// Finite-truncation proxy for membership of u_plus in the weighted space
/// with exponent q(p-1): the partial sum  sum v_k w_k^q |u+_k|^{q(p-1)}.
/// Informational only. Requires q > 1 and 1 < p <= 2.
double lp_membership_diagnostic(const Sequence& u_plus, const WeightedPenalty& pen, double q,
                                const WeightSequence& v);

}  // namespace spreg
