#include "spreg/sequences.hpp"

#include <cmath>
#include <string>

namespace spreg {

WeightSequence::WeightSequence(Eigen::VectorXd values) : values_(std::move(values)) {
  require_finite(values_, "weight sequence");
  w0_ = values_.minCoeff();
  if (!(w0_ > 0.0)) {
    throw std::invalid_argument("weight sequence must be strictly positive");
  }
}

WeightSequence uniform_weights(Eigen::Index n, double value) {
  return WeightSequence(Eigen::VectorXd::Constant(n, value));
}

double weighted_p_norm_power(const Sequence& u, const WeightSequence& w, double p) {
  require_same_size(u, w.values(), "weighted_p_norm_power");
  if (!(p > 0.0) || p > 2.0) {
    throw std::invalid_argument("weighted_p_norm_power requires p in (0, 2]");
  }
  double acc = 0.0;
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    acc += w[k] * std::pow(std::abs(u[k]), p);
  }
  return acc;
}

double support_count(const Sequence& u, const WeightSequence& w) {
  require_same_size(u, w.values(), "support_count");
  double acc = 0.0;
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    if (u[k] != 0.0) acc += w[k];
  }
  return acc;
}

bool multivalued_sign_contains(double x, double s) {
  if (x > 0.0) return s == 1.0;
  if (x < 0.0) return s == -1.0;
  return s >= -1.0 && s <= 1.0;
}

void require_same_size(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const char* what) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(what) + ": size mismatch (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
  }
}

void require_finite(const Eigen::VectorXd& v, const char* what) {
  if (v.size() < 1) {
    throw std::invalid_argument(std::string(what) + ": must have length >= 1");
  }
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": entries must be finite");
  }
}

}  // namespace spreg
