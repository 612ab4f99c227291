#pragma once

#include <Eigen/Core>

#include "spreg/errors.hpp"

namespace spreg {

/// Finite truncation of a real coefficient sequence. All statements about
/// sequence spaces are exercised on such prefixes of configured dimension.
using Sequence = Eigen::VectorXd;

/// Element of the data space (always a finite-dimensional real vector here).
using DataVector = Eigen::VectorXd;

/// Positive per-coefficient weights together with their lower bound w0.
class WeightSequence {
 public:
  explicit WeightSequence(Eigen::VectorXd values);

  const Eigen::VectorXd& values() const { return values_; }
  double w0() const { return w0_; }
  Eigen::Index size() const { return values_.size(); }
  double operator[](Eigen::Index k) const { return values_[k]; }

 private:
  Eigen::VectorXd values_;
  double w0_;
};

/// n copies of the same weight.
WeightSequence uniform_weights(Eigen::Index n, double value);

/// Sum w_k |u_k|^p for p in (0, 2]. This is the penalty value itself, not
/// its 1/p-th root.
double weighted_p_norm_power(const Sequence& u, const WeightSequence& w, double p);

/// Weighted number of nonzero entries, sum of w_k over {k : u_k != 0}.
/// Comparison against zero is exact: solvers write literal zeros.
double support_count(const Sequence& u, const WeightSequence& w);

/// Membership s in Sgn(x), the multivalued sign ({1} for x>0, [-1,1] for
/// x=0, {-1} for x<0).
bool multivalued_sign_contains(double x, double s);

/// Throws DimensionError unless both sizes agree.
void require_same_size(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const char* what);

/// Throws std::invalid_argument if the vector is empty or has NaN/Inf entries.
void require_finite(const Eigen::VectorXd& v, const char* what);

}  // namespace spreg
