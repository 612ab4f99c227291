#include "spreg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "spreg/thresholding.hpp"

namespace spreg {

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Eigen::VectorXd power_sigma(int n, double decay) {
  Eigen::VectorXd sigma(n);
  for (int k = 0; k < n; ++k) {
    sigma[k] = std::pow(static_cast<double>(k + 1), -decay);
  }
  return sigma;
}

}  // namespace

DataVector sphere_noise(int dim, double delta, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  DataVector e(dim);
  double norm = 0.0;
  do {
    for (int i = 0; i < dim; ++i) e[i] = gauss(rng);
    norm = e.norm();
  } while (norm == 0.0);
  return (delta / norm) * e;
}

double fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("fit_loglog_slope: size mismatch");
  }
  if (xs.size() < 3) {
    throw std::invalid_argument("fit_loglog_slope: need at least 3 points");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw std::invalid_argument("fit_loglog_slope: inputs must be positive");
    }
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

RateExperimentConfig default_rate_config(double p) {
  if (!(p >= 1.0 && p <= 2.0)) {
    throw std::invalid_argument("default_rate_config requires p in [1, 2]");
  }
  RateExperimentConfig cfg;
  cfg.p = p;
  cfg.n = 200;
  cfg.uniform_weight = 1.0;
  cfg.alpha_rule = 1.0;
  cfg.trials_per_delta = 10;
  cfg.noise_seed = 0;
  cfg.delta_grid.clear();
  for (int j = 0; j < 9; ++j) cfg.delta_grid.push_back(std::pow(10.0, -1.0 - 0.5 * j));

  // Truth profiles chosen so the worst-case rate of the theory is also the
  // observed rate: a signed power profile whose decay matches the sigma
  // decay (saturation), finitely supported in the p = 1 regime.
  int support_len = 0;
  double mag_decay = 0.0;
  if (p == 1.0) {
    cfg.sigma_decay = 0.5;
    support_len = 40;
    mag_decay = 3.0;
  } else if (p <= 1.75) {
    cfg.sigma_decay = 1.0;
    support_len = cfg.n;
    mag_decay = 2.0;
  } else {
    cfg.sigma_decay = 1.0;
    support_len = cfg.n;
    mag_decay = 1.5;
  }
  const double scale = 3.0;
  cfg.support.clear();
  cfg.magnitudes.clear();
  for (int k = 1; k <= support_len; ++k) {
    cfg.support.push_back(k);
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    cfg.magnitudes.push_back(sign * scale * std::pow(static_cast<double>(k), -mag_decay));
  }
  return cfg;
}

void validate(const RateExperimentConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("rate config: n must be >= 1");
  if (!(cfg.p >= 1.0 && cfg.p <= 2.0)) {
    throw std::invalid_argument("rate config: p must lie in [1, 2]");
  }
  if (!(cfg.uniform_weight > 0.0)) {
    throw std::invalid_argument("rate config: weight must be positive");
  }
  if (!(cfg.alpha_rule > 0.0)) {
    throw std::invalid_argument("rate config: alpha rule coefficient must be positive");
  }
  if (cfg.support.empty() || cfg.support.size() != cfg.magnitudes.size()) {
    throw std::invalid_argument("rate config: support and magnitudes must match and be nonempty");
  }
  for (const int k : cfg.support) {
    if (k < 1 || k > cfg.n) {
      throw std::invalid_argument("rate config: support indices must lie in [1, n]");
    }
  }
  for (const double m : cfg.magnitudes) {
    if (m == 0.0 || !std::isfinite(m)) {
      throw std::invalid_argument("rate config: magnitudes must be nonzero and finite");
    }
  }
  if (cfg.delta_grid.size() < 3) {
    throw std::invalid_argument("rate config: need at least 3 noise levels");
  }
  for (std::size_t i = 0; i < cfg.delta_grid.size(); ++i) {
    if (!(cfg.delta_grid[i] > 0.0)) {
      throw std::invalid_argument("rate config: noise levels must be positive");
    }
    if (i > 0 && !(cfg.delta_grid[i] < cfg.delta_grid[i - 1])) {
      throw std::invalid_argument("rate config: noise levels must be strictly decreasing");
    }
  }
  if (cfg.trials_per_delta < 1) {
    throw std::invalid_argument("rate config: trials_per_delta must be >= 1");
  }
  if (cfg.noise_scale < 0.0 || cfg.noise_scale > 1.0) {
    throw std::invalid_argument("rate config: noise_scale must lie in [0, 1]");
  }
  if (cfg.p == 1.0 && !(cfg.alpha_rule * cfg.delta_grid.front() < 1.0)) {
    throw std::invalid_argument("rate config: p = 1 bound needs alpha < 1 on the whole grid");
  }
}

namespace {

std::string describe_row(const RateRow& row, std::size_t delta_index, int trial) {
  std::ostringstream os;
  os.precision(17);
  os << "delta=" << row.delta << " (index " << delta_index << ", trial " << trial << ")"
     << " alpha=" << row.alpha << " residual=" << row.residual_norm
     << " err2_weighted=" << row.err2_weighted << " err1=" << row.err1
     << " bound_data=" << row.bound_data << " bound_recon=" << row.bound_recon;
  return os.str();
}

}  // namespace

RateReport run_rate_experiment(const RateExperimentConfig& cfg) {
  validate(cfg);
  const int n = cfg.n;
  DiagonalOperator diag{power_sigma(n, cfg.sigma_decay)};
  const WeightSequence weights = uniform_weights(n, cfg.uniform_weight);
  const WeightedPenalty pen{cfg.p, weights};

  std::vector<Eigen::Index> support0;
  std::vector<int> signs;
  std::vector<double> mags;
  for (std::size_t j = 0; j < cfg.support.size(); ++j) {
    support0.push_back(cfg.support[j] - 1);
    signs.push_back(cfg.magnitudes[j] > 0.0 ? 1 : -1);
    mags.push_back(std::abs(cfg.magnitudes[j]));
  }
  auto [u_plus, cert] = construct_sourced_instance(diag, support0, signs, mags, pen);

  RateReport report;
  report.rho = cert.rho;
  if (cfg.p > 1.0) report.inv_kappa_ref = 1.0 / kappa(cfg.p, 1.0, 1.0);

  const double c_infty = u_plus.lpNorm<Eigen::Infinity>();
  double lambda = 0.0;
  double radius_m = 0.0;
  if (cfg.p == 1.0) {
    radius_m = 2.0 * u_plus.lpNorm<1>() + 1.0;
    const BregmanTaylorConstants constants = bregman_taylor_lambda(
        DenseOperator{Eigen::MatrixXd(diag.sigma.asDiagonal())}, u_plus, weights, radius_m);
    lambda = constants.lambda;
    report.lambda = lambda;
  }

  const DataVector exact_data = diag.sigma.cwiseProduct(u_plus);
  std::vector<double> avg2(cfg.delta_grid.size(), 0.0);
  std::vector<double> avg1(cfg.delta_grid.size(), 0.0);

  for (std::size_t di = 0; di < cfg.delta_grid.size(); ++di) {
    const double delta = cfg.delta_grid[di];
    const double alpha = cfg.alpha_rule * delta;
    for (int trial = 0; trial < cfg.trials_per_delta; ++trial) {
      DataVector noise = DataVector::Zero(n);
      if (cfg.noise_scale > 0.0) {
        noise = sphere_noise(n, cfg.noise_scale * delta,
                             mix(cfg.noise_seed, di * 1000003ull + static_cast<std::uint64_t>(trial)));
      }
      RegularizedProblem prob{Operator{diag}, exact_data + noise, delta, alpha, pen};
      const SolveResult sol = solve_diagonal(prob);

      RateRow row;
      row.delta = delta;
      row.alpha = alpha;
      row.residual_norm = (apply(prob.op, sol.u) - prob.data).norm();
      const Sequence diff = sol.u - u_plus;
      row.err2_weighted = weights.values().cwiseProduct(diff.cwiseAbs2()).sum();
      row.err1 = diff.lpNorm<1>();
      row.bound_data = delta + 2.0 * alpha * cert.rho;
      if (cfg.p > 1.0) {
        const double l_obs = std::max(diff.lpNorm<Eigen::Infinity>(), 1e-12 * (1.0 + c_infty));
        const double k = kappa(cfg.p, c_infty, l_obs);
        const double num = delta + alpha * cert.rho;
        row.bound_recon = num * num / (alpha * k);
      } else {
        const double num = delta + alpha * cert.rho;
        row.bound_recon = num * num / (lambda * alpha * (1.0 - alpha));
      }

      if (row.residual_norm > row.bound_data) {
        throw BoundViolationError("data-side bound violated: " + describe_row(row, di, trial));
      }
      if (cfg.p > 1.0 && row.err2_weighted > row.bound_recon) {
        throw BoundViolationError("reconstruction bound violated: " +
                                  describe_row(row, di, trial));
      }
      if (cfg.p == 1.0) {
        if (row.err1 * row.err1 > row.bound_recon) {
          throw BoundViolationError("1-norm bound violated: " + describe_row(row, di, trial));
        }
        if (row.err1 > radius_m) {
          throw BoundViolationError("iterate left the certified 1-norm ball: " +
                                    describe_row(row, di, trial));
        }
      }

      // Closed form vs iterative thresholding on one row per run.
      if (di == 0 && trial == 0) {
        const SolveResult it = solve_iterative(prob, 2000000, 1e-10);
        report.cross_check_gap = (it.u - sol.u).norm();
        if (!(report.cross_check_gap <= 1e-8)) {
          throw BoundViolationError("solver cross-check failed: iterative vs diagonal gap " +
                                    std::to_string(report.cross_check_gap));
        }
      }

      avg2[di] += row.err2_weighted / cfg.trials_per_delta;
      avg1[di] += row.err1 / cfg.trials_per_delta;
      report.rows.push_back(row);
    }
  }

  report.slope2 = fit_loglog_slope(cfg.delta_grid, avg2);
  report.slope1 = fit_loglog_slope(cfg.delta_grid, avg1);
  return report;
}

double pinv_passthrough_threshold(const DiagonalOperator& op, const Sequence& u_star) {
  double threshold = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < u_star.size(); ++k) {
    if (u_star[k] != 0.0 && op.sigma[k] > 0.0) {
      const double level = op.sigma[k] * std::abs(u_star[k]);
      threshold = std::min(threshold, level * level);
    }
  }
  return threshold;
}

std::vector<PinvSweepRow> run_pinv_regularization_sweep(const DiagonalOperator& op,
                                                        const Sequence& u_star, double p,
                                                        const std::vector<double>& alpha_grid) {
  validate(op);
  if (!(p >= 0.0 && p < 1.0)) {
    throw std::invalid_argument("pinv sweep requires p in [0, 1)");
  }
  if (u_star.size() != op.sigma.size()) {
    throw DimensionError("pinv sweep: u_star dimension mismatch");
  }
  if (alpha_grid.empty()) {
    throw std::invalid_argument("pinv sweep: alpha grid must be nonempty");
  }
  for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
    if (!(alpha_grid[i] > 0.0)) {
      throw std::invalid_argument("pinv sweep: alphas must be positive");
    }
    if (i > 0 && !(alpha_grid[i] < alpha_grid[i - 1])) {
      throw std::invalid_argument("pinv sweep: alpha grid must be strictly decreasing");
    }
  }

  const DataVector g = op.sigma.cwiseProduct(u_star);  // exact data in the range
  const Sequence reference = pseudo_inverse_apply(op, g);
  const WeightedPenalty pen{p, uniform_weights(op.sigma.size(), 1.0)};

  std::vector<PinvSweepRow> rows;
  rows.reserve(alpha_grid.size());
  for (const double alpha : alpha_grid) {
    RegularizedProblem prob{Operator{op}, g, 0.0, alpha, pen};
    const SolveResult sol = solve_diagonal(prob);
    rows.push_back({alpha, (sol.u - reference).norm()});
  }
  return rows;
}

NonexistenceReport run_nonexistence_demo(int dim, const std::vector<int>& net_sizes, double alpha,
                                         std::uint64_t g_seed) {
  if (dim < 2) throw std::invalid_argument("nonexistence demo: dim must be >= 2");
  if (!(alpha > 0.0)) throw std::invalid_argument("nonexistence demo: alpha must be positive");
  if (net_sizes.empty()) throw std::invalid_argument("nonexistence demo: need net sizes");
  for (std::size_t i = 0; i < net_sizes.size(); ++i) {
    if (net_sizes[i] < 1) throw std::invalid_argument("nonexistence demo: net sizes must be >= 1");
    if (i > 0 && net_sizes[i] <= net_sizes[i - 1]) {
      throw std::invalid_argument("nonexistence demo: net sizes must be strictly increasing");
    }
  }
  if (!(1.0 > alpha)) {
    // The target is normalized to ||g|| = 1 below; with ||g||^2 <= alpha the
    // zero solution is a minimizer and there is nothing to demonstrate.
    throw std::invalid_argument("nonexistence demo requires ||g||^2 > alpha (alpha < 1)");
  }

  std::vector<DenseNetOperator> nets;
  nets.reserve(net_sizes.size());
  for (const int L : net_sizes) nets.push_back(build_dense_net(dim, L, g_seed));

  // Unit-norm target, re-drawn while parallel to any net column.
  Eigen::VectorXd g;
  bool parallel = true;
  for (std::uint64_t attempt = 0; parallel && attempt < 100; ++attempt) {
    g = sphere_noise(dim, 1.0, mix(g_seed, 0xabcdefull + attempt));
    parallel = false;
    for (const auto& net : nets) {
      const Eigen::VectorXd dots = net.columns.transpose() * g;
      if (dots.cwiseAbs().maxCoeff() >= 1.0 - 1e-12) {
        parallel = true;
        break;
      }
    }
  }
  if (parallel) {
    throw std::runtime_error("nonexistence demo: could not draw a non-parallel target");
  }

  NonexistenceReport report;
  report.alpha = alpha;
  report.g_norm2 = g.squaredNorm();

  for (std::size_t i = 0; i < nets.size(); ++i) {
    const Eigen::VectorXd dots = nets[i].columns.transpose() * g;
    // Best 1-sparse value with the optimal coefficient d = <g, h_k>:
    // ||d h_k - g||^2 = ||g||^2 - <g, h_k>^2.
    const double best_alignment = dots.cwiseAbs2().maxCoeff();
    const double m = report.g_norm2 - best_alignment + alpha;
    NonexistenceRow row{net_sizes[i], nets[i].resolution, m, m - alpha};
    if (!(row.gap > 0.0)) {
      throw BoundViolationError("nonexistence demo: infimum gap not positive at L=" +
                                std::to_string(row.net_size));
    }
    if (i > 0 && row.gap > report.rows[i - 1].gap + 1e-15) {
      throw BoundViolationError("nonexistence demo: gap increased from L=" +
                                std::to_string(report.rows[i - 1].net_size) +
                                " to L=" + std::to_string(row.net_size));
    }
    if (!(std::min(report.g_norm2, 2.0 * alpha) > row.one_sparse_min)) {
      throw BoundViolationError(
          "nonexistence demo: 0-/2-sparse values do not dominate the 1-sparse minimum at L=" +
          std::to_string(row.net_size));
    }
    report.rows.push_back(row);
  }
  if (!(report.rows.back().gap < 0.01 * alpha)) {
    throw BoundViolationError("nonexistence demo: residual gap too large at the finest net");
  }
  return report;
}

std::vector<ConstrainedDemoRow> run_constrained_nonconvergence_demo(
    int dim, int net_size, double tau, const std::vector<double>& delta_grid,
    std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("constrained demo: dim must be >= 2");
  if (net_size < 2) throw std::invalid_argument("constrained demo: need at least two columns");
  if (!(tau > 1.0)) throw std::invalid_argument("constrained demo: tau must exceed 1");
  if (delta_grid.empty()) throw std::invalid_argument("constrained demo: need noise levels");
  for (std::size_t i = 0; i < delta_grid.size(); ++i) {
    if (!(delta_grid[i] > 0.0)) {
      throw std::invalid_argument("constrained demo: noise levels must be positive");
    }
    if (i > 0 && !(delta_grid[i] < delta_grid[i - 1])) {
      throw std::invalid_argument("constrained demo: noise levels must be strictly decreasing");
    }
  }

  const DenseNetOperator net = build_dense_net(dim, net_size, seed);
  const Eigen::VectorXd g_plus = net.columns.col(0);
  const double sqrt2 = std::sqrt(2.0);

  std::vector<ConstrainedDemoRow> rows;
  rows.reserve(delta_grid.size());
  for (std::size_t i = 0; i < delta_grid.size(); ++i) {
    const double delta = delta_grid[i];
    const double epsilon = tau * delta;
    const Eigen::VectorXd g_delta = g_plus + sphere_noise(dim, delta, mix(seed, 7000 + i));

    // Any feasible 1-sparse reconstruction on a column other than the true
    // one; we take the closest such column.
    Eigen::Index best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index l = 1; l < net.columns.cols(); ++l) {
      const double dist = (net.columns.col(l) - g_delta).norm();
      if (dist < best_dist) {
        best_dist = dist;
        best = l;
      }
    }
    if (best < 0 || best_dist > epsilon) {
      throw NetTooCoarseError(
          "constrained demo: no alternative column within epsilon; increase the net size");
    }

    const double d = g_delta.dot(net.columns.col(best));
    if ((d * net.columns.col(best) - g_delta).norm() > epsilon) {
      throw BoundViolationError("constrained demo: optimal coefficient left feasibility");
    }
    ConstrainedDemoRow row;
    row.delta = delta;
    row.epsilon = epsilon;
    row.chosen_index = static_cast<long>(best) + 1;
    row.coeff = d;
    // Coefficient-space distances to the truth e_1; best != 0 throughout.
    Sequence diff_u = Sequence::Zero(net.columns.cols());
    diff_u[0] = -1.0;
    diff_u[best] = d;
    row.distance = diff_u.norm();
    diff_u[best] = 1.0;
    row.unit_distance = diff_u.norm();
    if (!(row.distance >= 1.0)) {
      throw BoundViolationError("constrained demo: reconstruction distance fell below 1");
    }
    if (std::abs(row.unit_distance - sqrt2) > 1e-9) {
      throw BoundViolationError("constrained demo: unit-coefficient distance is not sqrt(2)");
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace spreg
