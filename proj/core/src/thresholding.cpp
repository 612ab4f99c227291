#include "spreg/thresholding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spreg {

namespace {

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Root of g(y) = x on a bracket [lo, hi] where g is increasing and
// g(lo) <= x <= g(hi). Newton with bisection safeguard.
double solve_g_increasing(const ThresholdSpec& spec, double x, double lo, double hi) {
  const double p = spec.p;
  const double a = spec.alpha;
  const double tol = 1e-12 * (1.0 + std::abs(x));
  auto g = [&](double y) { return y + 0.5 * a * p * std::pow(y, p - 1.0); };
  auto gprime = [&](double y) {
    return 1.0 + 0.5 * a * p * (p - 1.0) * std::pow(y, p - 2.0);
  };

  double y = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = g(y) - x;
    if (std::abs(f) <= tol) return y;
    if (f > 0.0) {
      hi = y;
    } else {
      lo = y;
    }
    const double gp = gprime(y);
    double next = (gp > 0.0 && std::isfinite(gp)) ? y - f / gp : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == y) break;  // bracket exhausted at double precision
    y = next;
  }
  return y;
}

}  // namespace

void validate(const ThresholdSpec& spec) {
  if (!(spec.alpha > 0.0) || !std::isfinite(spec.alpha)) {
    throw std::invalid_argument("threshold spec: alpha must be positive and finite");
  }
  if (!(spec.p >= 0.0 && spec.p <= 2.0)) {
    throw std::invalid_argument("threshold spec: p must lie in [0, 2]");
  }
}

double g_map(const ThresholdSpec& spec, double y) {
  validate(spec);
  if (!(spec.p > 0.0)) {
    throw std::invalid_argument("g_map requires p > 0");
  }
  if (spec.p < 1.0 && y == 0.0) {
    throw MultivaluedPointError("g_map is multivalued at y = 0 for p < 1");
  }
  if (y == 0.0) return 0.0;
  return y + 0.5 * spec.alpha * spec.p * sgn(y) * std::pow(std::abs(y), spec.p - 1.0);
}

double effective_threshold(const ThresholdSpec& spec) {
  validate(spec);
  const double p = spec.p;
  if (p >= 1.0) {
    throw std::invalid_argument("effective_threshold requires p < 1");
  }
  if (p == 0.0) return std::sqrt(spec.alpha);
  return (2.0 - p) / (2.0 - 2.0 * p) * std::pow(spec.alpha * (1.0 - p), 1.0 / (2.0 - p));
}

double threshold(const ThresholdSpec& spec, double x) {
  validate(spec);
  const double p = spec.p;
  const double a = spec.alpha;
  const double ax = std::abs(x);
  const double s = sgn(x);

  if (p == 0.0) {
    return ax <= std::sqrt(a) ? 0.0 : x;
  }
  if (p == 1.0) {
    return s * std::max(ax - 0.5 * a, 0.0);
  }
  if (p == 2.0) {
    return x / (1.0 + a);
  }
  if (x == 0.0) return 0.0;

  if (p > 1.0) {
    // g is increasing on [0, |x|] with g(0) = 0 and g(|x|) >= |x|.
    return s * solve_g_increasing(spec, ax, 0.0, ax);
  }

  // 0 < p < 1: zero below the jump, largest-magnitude preimage of g above it.
  const double jump = effective_threshold(spec);
  if (ax <= jump) return 0.0;
  const double y_crit = std::pow(0.5 * a * p * (1.0 - p), 1.0 / (2.0 - p));
  return s * solve_g_increasing(spec, ax, y_crit, ax);
}

double oracle_grid_spacing(double grid_halfwidth, long grid_points) {
  return 2.0 * grid_halfwidth / static_cast<double>(grid_points - 1);
}

double oracle_threshold(const ThresholdSpec& spec, double x, double grid_halfwidth,
                        long grid_points) {
  validate(spec);
  if (grid_points < 100000) {
    throw std::invalid_argument("oracle_threshold requires at least 1e5 grid points");
  }
  if (!(grid_halfwidth >= 2.0 * std::abs(x) + 1.0)) {
    throw std::invalid_argument("oracle_threshold grid must cover 2|x| + 1");
  }
  const double p = spec.p;
  const double a = spec.alpha;
  auto objective = [&](double y) {
    const double d = y - x;
    double pen;
    if (p == 0.0) {
      pen = y != 0.0 ? a : 0.0;
    } else {
      pen = a * std::pow(std::abs(y), p);
    }
    return d * d + pen;
  };

  const double h = oracle_grid_spacing(grid_halfwidth, grid_points);
  double best_y = 0.0;
  double best_f = objective(0.0);  // 0 is always part of the grid
  for (long i = 0; i < grid_points; ++i) {
    const double y = -grid_halfwidth + h * static_cast<double>(i);
    const double f = objective(y);
    if (f < best_f || (f == best_f && std::abs(y) < std::abs(best_y))) {
      best_f = f;
      best_y = y;
    }
  }
  return best_y;
}

}  // namespace spreg
