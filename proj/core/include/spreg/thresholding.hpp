#pragma once

#include "spreg/errors.hpp"

namespace spreg {

/*
 * Scalar generalized thresholding.
 *
 * threshold(spec, x) returns a global minimizer of
 *
 *     y  ->  (y - x)^2 + alpha * |y|^p,        0 <= p <= 2,
 *
 * which interpolates between hard thresholding (p = 0), soft thresholding
 * (p = 1) and linear Tikhonov shrinkage (p = 2). The auxiliary map
 *
 *     g_map(spec, y) = y + (alpha * p / 2) * sgn(y) * |y|^(p-1)
 *
 * is the stationarity condition of the objective; for p > 1 the minimizer
 * is its unique inverse, for p < 1 the minimizer jumps from 0 to the
 * largest-magnitude preimage at |x| = effective_threshold(spec). At the
 * jump itself the value 0 is returned.
 */

struct ThresholdSpec {
  double p;      // exponent in [0, 2]
  double alpha;  // penalty strength, > 0
};

void validate(const ThresholdSpec& spec);

/// The auxiliary map y + (alpha*p/2) sgn(y) |y|^{p-1}. Requires p > 0; for
/// p < 1 the point y = 0 is multivalued and rejected.
double g_map(const ThresholdSpec& spec, double y);

/// Global minimizer of (y-x)^2 + alpha |y|^p. Exact closed forms at
/// p = 0, 1, 2; monotone safeguarded Newton on the g_map bracket otherwise,
/// solved to |g(y) - x| <= 1e-12 * (1 + |x|). Kill branches write literal 0.
double threshold(const ThresholdSpec& spec, double x);

/// Brute-force grid minimizer of the same objective, independent of the
/// closed forms and root finding above. The grid covers
/// [-grid_halfwidth, grid_halfwidth], always contains 0, and ties are
/// broken toward smaller |y|. Requires grid_points >= 1e5 and
/// grid_halfwidth >= 2|x| + 1.
double oracle_threshold(const ThresholdSpec& spec, double x, double grid_halfwidth,
                        long grid_points);

/// Jump location of the threshold map for p < 1: sqrt(alpha) at p = 0 and
/// (2-p)/(2-2p) * (alpha(1-p))^{1/(2-p)} for 0 < p < 1.
double effective_threshold(const ThresholdSpec& spec);

/// Grid spacing used by oracle_threshold, for agreement tolerances.
double oracle_grid_spacing(double grid_halfwidth, long grid_points);

}  // namespace spreg
