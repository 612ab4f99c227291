#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "spreg/experiments.hpp"
#include "spreg/operators.hpp"
#include "spreg/solvers.hpp"

namespace spreg {

/*
 * Plain-text formats.
 *
 * Operator file: either
 *     M N
 *     <M rows of N space-separated decimals>
 * or
 *     diag N
 *     <N decimals>
 *
 * Problem file: one "key value(s)" pair per line, '#' starts a comment:
 *     operator <path>              (relative to the problem file)
 *     alpha <v>
 *     delta <v>
 *     p <v>
 *     weights uniform <w> | weights <N values>
 *     data <M values>
 *
 * All numbers render with 17 significant digits and LF line endings so
 * repeated runs are byte-identical.
 */

void write_operator(std::ostream& os, const Operator& op);
Operator read_operator(std::istream& is);
Operator read_operator_file(const std::string& path);

RegularizedProblem read_problem_file(const std::string& path);

void write_sequence_file(const std::string& path, const Sequence& u);

/// Fixed-width decimal rendering used for all file output ("%.17g").
std::string format_number(double v);

/// Flat "key value..." config file; '#' comments, unknown keys are the
/// caller's to reject. Values keep their order.
std::map<std::string, std::vector<std::string>> read_keyvalue_file(const std::string& path);

/// Rate config from a key-value file. Recognized keys: n, sigma_decay,
/// support | support_prefix, magnitudes | magnitude_scale + magnitude_decay
/// [+ sign_alternate], p, weights, delta_grid, alpha_rule, noise_seed,
/// trials_per_delta, noise_scale, slope2_band, slope1_band. Unknown keys
/// are rejected.
RateExperimentConfig read_rate_config_file(const std::string& path);

/// Pinv-sweep config: sigma (N values), ustar (N values), p, alpha_grid.
struct PinvSweepConfig {
  DiagonalOperator op{Eigen::VectorXd::Ones(1)};
  Sequence u_star = Sequence::Zero(1);
  double p = 0.0;
  std::vector<double> alpha_grid;
};

PinvSweepConfig read_pinv_config_file(const std::string& path);

// CSV emission: header row, one row per record, then a '#'-prefixed
// trailing summary block.
void write_rate_csv(std::ostream& os, const RateReport& report);
void write_pinv_csv(std::ostream& os, const std::vector<PinvSweepRow>& rows);
void write_nonexistence_csv(std::ostream& os, const NonexistenceReport& report);
void write_constrained_csv(std::ostream& os, const std::vector<ConstrainedDemoRow>& rows);

}  // namespace spreg
