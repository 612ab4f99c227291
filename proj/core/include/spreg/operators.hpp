#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <variant>
#include <vector>

#include "spreg/sequences.hpp"

namespace spreg {

/// General linear forward map stored as a dense M x N matrix.
struct DenseOperator {
  Eigen::MatrixXd matrix;
};

/// Forward map diagonal in the coefficient bases: (Ku)_k = sigma_k u_k.
/// Singular values may contain zeros (non-injective directions).
struct DiagonalOperator {
  Eigen::VectorXd sigma;
};

/// Operator whose columns are unit vectors forming a finite net on the unit
/// sphere of R^M. `resolution` is the measured covering radius: the largest
/// distance from a random probe direction to its nearest column.
struct DenseNetOperator {
  Eigen::MatrixXd columns;
  double resolution = 0.0;
  bool equal_angle = false;  // 2-D equal-angle construction, enables O(1) nearest lookup
};

/// Value type over the three operator forms. Wrapping the variant keeps
/// argument-dependent lookup inside this namespace.
class Operator {
 public:
  Operator(DenseOperator op) : form_(std::move(op)) {}
  Operator(DiagonalOperator op) : form_(std::move(op)) {}
  Operator(DenseNetOperator op) : form_(std::move(op)) {}

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&form_);
  }
  template <class T>
  bool holds() const {
    return std::holds_alternative<T>(form_);
  }
  const std::variant<DenseOperator, DiagonalOperator, DenseNetOperator>& form() const {
    return form_;
  }

 private:
  std::variant<DenseOperator, DiagonalOperator, DenseNetOperator> form_;
};

void validate(const DenseOperator& op);
void validate(const DiagonalOperator& op);
void validate(const DenseNetOperator& op);

/// Input (sequence) dimension of the operator.
Eigen::Index domain_dim(const Operator& op);
/// Output (data) dimension of the operator.
Eigen::Index range_dim(const Operator& op);

/// K u.
DataVector apply(const Operator& op, const Sequence& u);
/// K* r (transpose action).
Sequence adjoint_apply(const Operator& op, const DataVector& r);

/// Largest singular value, relative accuracy ~1e-8 at desk scale.
double operator_norm(const Operator& op);

/// Minimum-norm least-squares inverse of a diagonal operator:
/// component-wise g_k / sigma_k where sigma_k > 0, zero elsewhere.
Sequence pseudo_inverse_apply(const DiagonalOperator& op, const DataVector& g);

/// True iff the column submatrix indexed by `index_set` has full column
/// rank (smallest singular value > 1e-10 times the largest).
bool fbi_check(const DenseOperator& op, const std::vector<Eigen::Index>& index_set);

/// Smallest singular value of the column restriction. Throws
/// FbiViolationError when the restriction is rank deficient.
double restricted_smallest_singular_value(const DenseOperator& op,
                                          const std::vector<Eigen::Index>& index_set);

/// Deterministic quasi-uniform net of `count` unit columns in R^dim. In two
/// dimensions the columns sit at equal angles 2*pi*j/count; in higher
/// dimensions they come from a seeded low-discrepancy direction sequence.
/// The covering resolution is estimated with at least 10*count random
/// probes (minimum 1000).
DenseNetOperator build_dense_net(int dim, int count, std::uint64_t seed);

/// Distance from a unit vector to the nearest net column.
double nearest_column_distance(const DenseNetOperator& net, const Eigen::VectorXd& point);

}  // namespace spreg
