#include "spreg/operators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace spreg {

namespace {

const Eigen::MatrixXd& dense_matrix(const Operator& op);

struct DomainDimVisitor {
  Eigen::Index operator()(const DenseOperator& d) const { return d.matrix.cols(); }
  Eigen::Index operator()(const DiagonalOperator& d) const { return d.sigma.size(); }
  Eigen::Index operator()(const DenseNetOperator& d) const { return d.columns.cols(); }
};

struct RangeDimVisitor {
  Eigen::Index operator()(const DenseOperator& d) const { return d.matrix.rows(); }
  Eigen::Index operator()(const DiagonalOperator& d) const { return d.sigma.size(); }
  Eigen::Index operator()(const DenseNetOperator& d) const { return d.columns.rows(); }
};

}  // namespace

void validate(const DenseOperator& op) {
  if (op.matrix.rows() < 1 || op.matrix.cols() < 1 || !op.matrix.allFinite()) {
    throw std::invalid_argument("dense operator: matrix must be nonempty and finite");
  }
}

void validate(const DiagonalOperator& op) {
  require_finite(op.sigma, "diagonal operator");
  if (op.sigma.minCoeff() < 0.0) {
    throw std::invalid_argument("diagonal operator: singular values must be >= 0");
  }
  if (op.sigma.maxCoeff() <= 0.0) {
    throw std::invalid_argument("diagonal operator: at least one singular value must be > 0");
  }
}

void validate(const DenseNetOperator& op) {
  if (op.columns.rows() < 2 || op.columns.cols() < 1 || !op.columns.allFinite()) {
    throw std::invalid_argument("net operator: need M >= 2 finite rows");
  }
  for (Eigen::Index j = 0; j < op.columns.cols(); ++j) {
    if (std::abs(op.columns.col(j).norm() - 1.0) > 1e-12) {
      throw std::invalid_argument("net operator: columns must be unit vectors");
    }
  }
}

Eigen::Index domain_dim(const Operator& op) { return std::visit(DomainDimVisitor{}, op.form()); }
Eigen::Index range_dim(const Operator& op) { return std::visit(RangeDimVisitor{}, op.form()); }

DataVector apply(const Operator& op, const Sequence& u) {
  if (u.size() != domain_dim(op)) {
    throw DimensionError("apply: sequence dimension does not match operator");
  }
  if (const auto* d = op.get_if<DiagonalOperator>()) {
    return d->sigma.cwiseProduct(u);
  }
  return dense_matrix(op) * u;
}

Sequence adjoint_apply(const Operator& op, const DataVector& r) {
  if (r.size() != range_dim(op)) {
    throw DimensionError("adjoint_apply: data dimension does not match operator");
  }
  if (const auto* d = op.get_if<DiagonalOperator>()) {
    return d->sigma.cwiseProduct(r);
  }
  return dense_matrix(op).transpose() * r;
}

double operator_norm(const Operator& op) {
  if (const auto* d = op.get_if<DiagonalOperator>()) {
    return d->sigma.maxCoeff();
  }
  const Eigen::MatrixXd& m = dense_matrix(op);
  // Largest singular value via the smaller Gram matrix; exact at desk scale
  // and cheap even for very wide net operators.
  Eigen::MatrixXd gram;
  if (m.rows() <= m.cols()) {
    gram = m * m.transpose();
  } else {
    gram = m.transpose() * m;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

Sequence pseudo_inverse_apply(const DiagonalOperator& op, const DataVector& g) {
  if (g.size() != op.sigma.size()) {
    throw DimensionError("pseudo_inverse_apply: data dimension mismatch");
  }
  Sequence u = Sequence::Zero(op.sigma.size());
  for (Eigen::Index k = 0; k < op.sigma.size(); ++k) {
    if (op.sigma[k] > 0.0) u[k] = g[k] / op.sigma[k];
  }
  return u;
}

namespace {

Eigen::MatrixXd column_restriction(const DenseOperator& op,
                                   const std::vector<Eigen::Index>& index_set) {
  if (index_set.empty()) {
    throw std::invalid_argument("column restriction: index set must be nonempty");
  }
  Eigen::MatrixXd sub(op.matrix.rows(), static_cast<Eigen::Index>(index_set.size()));
  for (std::size_t j = 0; j < index_set.size(); ++j) {
    const Eigen::Index k = index_set[j];
    if (k < 0 || k >= op.matrix.cols()) {
      throw std::invalid_argument("column restriction: index out of range");
    }
    sub.col(static_cast<Eigen::Index>(j)) = op.matrix.col(k);
  }
  return sub;
}

}  // namespace

bool fbi_check(const DenseOperator& op, const std::vector<Eigen::Index>& index_set) {
  const Eigen::MatrixXd sub = column_restriction(op, index_set);
  if (sub.cols() > sub.rows()) return false;  // cannot have full column rank
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub);
  const auto& sv = svd.singularValues();
  return sv[sv.size() - 1] > 1e-10 * sv[0];
}

double restricted_smallest_singular_value(const DenseOperator& op,
                                          const std::vector<Eigen::Index>& index_set) {
  if (!fbi_check(op, index_set)) {
    throw FbiViolationError("restricted operator is rank deficient on the given index set");
  }
  const Eigen::MatrixXd sub = column_restriction(op, index_set);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub);
  return svd.singularValues()[sub.cols() - 1];
}

namespace {

// Low-discrepancy points in [0,1)^dim by the additive recurrence with the
// generalized golden ratio; the seed applies a toroidal shift.
class DirectionSequence {
 public:
  DirectionSequence(int dim, std::uint64_t seed) : alphas_(dim), shift_(dim) {
    double phi = 1.0;
    for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (dim + 1.0));
    double a = 1.0;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int d = 0; d < dim; ++d) {
      a /= phi;
      alphas_[d] = a;
      shift_[d] = unif(rng);
    }
  }

  Eigen::VectorXd point(long index) const {
    Eigen::VectorXd x(alphas_.size());
    for (Eigen::Index d = 0; d < x.size(); ++d) {
      double v = shift_[d] + alphas_[d] * static_cast<double>(index + 1);
      x[d] = v - std::floor(v);
    }
    return x;
  }

 private:
  Eigen::VectorXd alphas_;
  Eigen::VectorXd shift_;
};

// Unit direction from a low-discrepancy point via Box-Muller pairs.
Eigen::VectorXd direction_from_unit_cube(const Eigen::VectorXd& x, int dim) {
  Eigen::VectorXd z(dim);
  for (int d = 0; d < dim; d += 2) {
    const double u1 = std::max(x[d], 1e-300);
    const double u2 = d + 1 < dim ? x[d + 1] : 0.25;
    const double r = std::sqrt(-2.0 * std::log(u1));
    z[d] = r * std::cos(2.0 * std::numbers::pi * u2);
    if (d + 1 < dim) z[d + 1] = r * std::sin(2.0 * std::numbers::pi * u2);
  }
  const double n = z.norm();
  return n > 0.0 ? Eigen::VectorXd(z / n) : Eigen::VectorXd::Unit(dim, 0);
}

}  // namespace

double nearest_column_distance(const DenseNetOperator& net, const Eigen::VectorXd& point) {
  const Eigen::Index count = net.columns.cols();
  if (net.equal_angle) {
    // Columns at angles 2*pi*j/count; check the rounded index and its
    // neighbours.
    const double angle = std::atan2(point[1], point[0]);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(count);
    const long j0 = std::lround(angle / step);
    double best = std::numeric_limits<double>::infinity();
    for (long dj = -1; dj <= 1; ++dj) {
      long j = (j0 + dj) % count;
      if (j < 0) j += count;
      best = std::min(best, (point - net.columns.col(j)).norm());
    }
    return best;
  }
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < count; ++j) {
    best = std::min(best, (point - net.columns.col(j)).norm());
  }
  return best;
}

DenseNetOperator build_dense_net(int dim, int count, std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("build_dense_net: dim must be >= 2");
  if (count < 1) throw std::invalid_argument("build_dense_net: count must be >= 1");

  DenseNetOperator net;
  net.columns.resize(dim, count);
  if (dim == 2) {
    net.equal_angle = true;
    for (int j = 0; j < count; ++j) {
      const double angle = 2.0 * std::numbers::pi * j / static_cast<double>(count);
      net.columns(0, j) = std::cos(angle);
      net.columns(1, j) = std::sin(angle);
    }
  } else {
    DirectionSequence dirs(dim, seed);
    for (int j = 0; j < count; ++j) {
      net.columns.col(j) = direction_from_unit_cube(dirs.point(j), dim);
    }
  }

  // Covering-radius estimate from seeded random probes.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const long probes = std::max<long>(10L * count, 1000L);
  double res = 0.0;
  Eigen::VectorXd probe(dim);
  for (long i = 0; i < probes; ++i) {
    for (int d = 0; d < dim; ++d) probe[d] = gauss(rng);
    const double n = probe.norm();
    if (n == 0.0) continue;
    probe /= n;
    res = std::max(res, nearest_column_distance(net, probe));
  }
  net.resolution = res;
  return net;
}

namespace {

const Eigen::MatrixXd& dense_matrix(const Operator& op) {
  if (const auto* d = op.get_if<DenseOperator>()) return d->matrix;
  if (const auto* n = op.get_if<DenseNetOperator>()) return n->columns;
  throw std::logic_error("dense_matrix: diagonal operator has no dense storage");
}

}  // namespace

}  // namespace spreg
