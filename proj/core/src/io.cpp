#include "spreg/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace spreg {

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
  throw std::invalid_argument("parse error: " + what);
}

double to_double(const std::string& tok, const std::string& context) {
  double v = 0.0;
  std::size_t pos = 0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    parse_fail(context + ": not a number: '" + tok + "'");
  }
  if (pos != tok.size()) parse_fail(context + ": trailing characters in '" + tok + "'");
  return v;
}

long to_long(const std::string& tok, const std::string& context) {
  long v = 0;
  std::size_t pos = 0;
  try {
    v = std::stol(tok, &pos);
  } catch (const std::exception&) {
    parse_fail(context + ": not an integer: '" + tok + "'");
  }
  if (pos != tok.size()) parse_fail(context + ": trailing characters in '" + tok + "'");
  return v;
}

std::vector<double> to_doubles(const std::vector<std::string>& toks, const std::string& context) {
  std::vector<double> out;
  out.reserve(toks.size());
  for (const auto& t : toks) out.push_back(to_double(t, context));
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_operator(std::ostream& os, const Operator& op) {
  if (const auto* diag = op.get_if<DiagonalOperator>()) {
    os << "diag " << diag->sigma.size() << "\n";
    for (Eigen::Index k = 0; k < diag->sigma.size(); ++k) {
      os << (k ? " " : "") << format_number(diag->sigma[k]);
    }
    os << "\n";
    return;
  }
  const Eigen::MatrixXd& m = op.holds<DenseOperator>()
                                 ? std::get<DenseOperator>(op.form()).matrix
                                 : std::get<DenseNetOperator>(op.form()).columns;
  os << m.rows() << " " << m.cols() << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      os << (j ? " " : "") << format_number(m(i, j));
    }
    os << "\n";
  }
}

Operator read_operator(std::istream& is) {
  std::string first;
  if (!(is >> first)) parse_fail("operator: empty input");
  if (first == "diag") {
    long n = 0;
    if (!(is >> n) || n < 1) parse_fail("operator: bad diagonal dimension");
    Eigen::VectorXd sigma(n);
    for (long k = 0; k < n; ++k) {
      if (!(is >> sigma[k])) parse_fail("operator: missing diagonal value");
    }
    DiagonalOperator op{std::move(sigma)};
    validate(op);
    return op;
  }
  long rows = 0, cols = 0;
  try {
    rows = to_long(first, "operator rows");
  } catch (const std::invalid_argument&) {
    parse_fail("operator: header must be 'M N' or 'diag N'");
  }
  if (!(is >> cols) || rows < 1 || cols < 1) parse_fail("operator: bad dimensions");
  Eigen::MatrixXd m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) {
      if (!(is >> m(i, j))) parse_fail("operator: missing matrix entry");
    }
  }
  DenseOperator op{std::move(m)};
  validate(op);
  return op;
}

Operator read_operator_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) parse_fail("cannot open operator file: " + path);
  return read_operator(is);
}

std::map<std::string, std::vector<std::string>> read_keyvalue_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) parse_fail("cannot open file: " + path);
  std::map<std::string, std::vector<std::string>> out;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::vector<std::string> values;
    std::string tok;
    while (ls >> tok) values.push_back(tok);
    if (out.count(key)) parse_fail("duplicate key '" + key + "' in " + path);
    out.emplace(std::move(key), std::move(values));
  }
  return out;
}

RegularizedProblem read_problem_file(const std::string& path) {
  auto kv = read_keyvalue_file(path);
  auto take = [&](const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) parse_fail("problem file: missing key '" + key + "'");
    auto vals = it->second;
    kv.erase(it);
    return vals;
  };

  const auto op_vals = take("operator");
  if (op_vals.size() != 1) parse_fail("problem file: 'operator' takes one path");
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  Operator op = read_operator_file((base / op_vals[0]).string());

  const double alpha = to_double(take("alpha").at(0), "alpha");
  const double delta = to_double(take("delta").at(0), "delta");
  const double p = to_double(take("p").at(0), "p");

  const Eigen::Index n = domain_dim(op);
  auto weight_vals = take("weights");
  Eigen::VectorXd w;
  if (!weight_vals.empty() && weight_vals[0] == "uniform") {
    if (weight_vals.size() != 2) parse_fail("problem file: 'weights uniform' takes one value");
    w = Eigen::VectorXd::Constant(n, to_double(weight_vals[1], "uniform weight"));
  } else {
    const auto ws = to_doubles(weight_vals, "weights");
    if (static_cast<Eigen::Index>(ws.size()) != n) {
      parse_fail("problem file: weights length does not match operator");
    }
    w = Eigen::Map<const Eigen::VectorXd>(ws.data(), n);
  }

  const auto data_vals = to_doubles(take("data"), "data");
  if (static_cast<Eigen::Index>(data_vals.size()) != range_dim(op)) {
    parse_fail("problem file: data length does not match operator");
  }
  DataVector data = Eigen::Map<const Eigen::VectorXd>(data_vals.data(),
                                                      static_cast<Eigen::Index>(data_vals.size()));

  if (!kv.empty()) parse_fail("problem file: unknown key '" + kv.begin()->first + "'");

  RegularizedProblem prob{std::move(op), std::move(data), delta, alpha,
                          WeightedPenalty{p, WeightSequence(std::move(w))}};
  validate(prob);
  return prob;
}

void write_sequence_file(const std::string& path, const Sequence& u) {
  std::ofstream os(path, std::ios::binary);
  if (!os) parse_fail("cannot open output file: " + path);
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    os << format_number(u[k]) << "\n";
  }
}

RateExperimentConfig read_rate_config_file(const std::string& path) {
  auto kv = read_keyvalue_file(path);
  RateExperimentConfig cfg;
  cfg.support.clear();
  cfg.magnitudes.clear();
  cfg.delta_grid.clear();

  double magnitude_scale = 1.0;
  double magnitude_decay = 0.0;
  bool have_profile = false;
  bool sign_alternate = true;
  long support_prefix = 0;

  auto pop = [&](const std::string& key) -> std::optional<std::vector<std::string>> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    auto vals = it->second;
    if (vals.empty()) parse_fail("rate config: key '" + key + "' has no value");
    kv.erase(it);
    return vals;
  };

  if (auto v = pop("n")) cfg.n = static_cast<int>(to_long(v->at(0), "n"));
  if (auto v = pop("sigma_decay")) cfg.sigma_decay = to_double(v->at(0), "sigma_decay");
  if (auto v = pop("p")) cfg.p = to_double(v->at(0), "p");
  if (auto v = pop("weights")) cfg.uniform_weight = to_double(v->at(0), "weights");
  if (auto v = pop("alpha_rule")) cfg.alpha_rule = to_double(v->at(0), "alpha_rule");
  if (auto v = pop("noise_seed")) {
    cfg.noise_seed = static_cast<std::uint64_t>(to_long(v->at(0), "noise_seed"));
  }
  if (auto v = pop("trials_per_delta")) {
    cfg.trials_per_delta = static_cast<int>(to_long(v->at(0), "trials_per_delta"));
  }
  if (auto v = pop("noise_scale")) cfg.noise_scale = to_double(v->at(0), "noise_scale");
  if (auto v = pop("delta_grid")) cfg.delta_grid = to_doubles(*v, "delta_grid");
  if (auto v = pop("support")) {
    for (const auto& t : *v) cfg.support.push_back(static_cast<int>(to_long(t, "support")));
  }
  if (auto v = pop("support_prefix")) support_prefix = to_long(v->at(0), "support_prefix");
  if (auto v = pop("magnitudes")) cfg.magnitudes = to_doubles(*v, "magnitudes");
  if (auto v = pop("magnitude_scale")) {
    magnitude_scale = to_double(v->at(0), "magnitude_scale");
    have_profile = true;
  }
  if (auto v = pop("magnitude_decay")) {
    magnitude_decay = to_double(v->at(0), "magnitude_decay");
    have_profile = true;
  }
  if (auto v = pop("sign_alternate")) sign_alternate = to_long(v->at(0), "sign_alternate") != 0;
  if (auto v = pop("slope2_band")) {
    if (v->size() != 2) parse_fail("slope2_band takes two values");
    cfg.slope2_band_lo = to_double(v->at(0), "slope2_band");
    cfg.slope2_band_hi = to_double(v->at(1), "slope2_band");
  }
  if (auto v = pop("slope1_band")) {
    if (v->size() != 2) parse_fail("slope1_band takes two values");
    cfg.slope1_band_lo = to_double(v->at(0), "slope1_band");
    cfg.slope1_band_hi = to_double(v->at(1), "slope1_band");
  }
  if (!kv.empty()) parse_fail("rate config: unknown key '" + kv.begin()->first + "'");

  if (support_prefix > 0) {
    if (!cfg.support.empty()) parse_fail("rate config: give either support or support_prefix");
    for (long k = 1; k <= support_prefix; ++k) cfg.support.push_back(static_cast<int>(k));
  }
  if (cfg.magnitudes.empty() && have_profile) {
    if (!(magnitude_decay >= 0.0)) parse_fail("rate config: magnitude_decay must be >= 0");
    for (std::size_t j = 0; j < cfg.support.size(); ++j) {
      const double k = cfg.support[j];
      const double sign = (!sign_alternate || j % 2 == 0) ? 1.0 : -1.0;
      cfg.magnitudes.push_back(sign * magnitude_scale * std::pow(k, -magnitude_decay));
    }
  }
  validate(cfg);
  return cfg;
}

PinvSweepConfig read_pinv_config_file(const std::string& path) {
  auto kv = read_keyvalue_file(path);
  auto take = [&](const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) parse_fail("pinv config: missing key '" + key + "'");
    auto vals = it->second;
    kv.erase(it);
    return vals;
  };
  PinvSweepConfig cfg;
  const auto sig = to_doubles(take("sigma"), "sigma");
  const auto ustar = to_doubles(take("ustar"), "ustar");
  if (sig.size() != ustar.size()) parse_fail("pinv config: sigma/ustar length mismatch");
  cfg.op.sigma = Eigen::Map<const Eigen::VectorXd>(sig.data(), static_cast<Eigen::Index>(sig.size()));
  cfg.u_star =
      Eigen::Map<const Eigen::VectorXd>(ustar.data(), static_cast<Eigen::Index>(ustar.size()));
  cfg.p = to_double(take("p").at(0), "p");
  cfg.alpha_grid = to_doubles(take("alpha_grid"), "alpha_grid");
  if (!kv.empty()) parse_fail("pinv config: unknown key '" + kv.begin()->first + "'");
  validate(cfg.op);
  return cfg;
}

void write_rate_csv(std::ostream& os, const RateReport& report) {
  os << "delta,alpha,residual_norm,err2_weighted,err1,bound_data,bound_recon\n";
  for (const auto& r : report.rows) {
    os << format_number(r.delta) << "," << format_number(r.alpha) << ","
       << format_number(r.residual_norm) << "," << format_number(r.err2_weighted) << ","
       << format_number(r.err1) << "," << format_number(r.bound_data) << ","
       << format_number(r.bound_recon) << "\n";
  }
  os << "# slope2 " << format_number(report.slope2) << "\n";
  os << "# slope1 " << format_number(report.slope1) << "\n";
  os << "# rho " << format_number(report.rho) << "\n";
  if (report.lambda > 0.0) os << "# lambda " << format_number(report.lambda) << "\n";
  if (report.inv_kappa_ref > 0.0) {
    os << "# inv_kappa_ref " << format_number(report.inv_kappa_ref) << "\n";
  }
}

void write_pinv_csv(std::ostream& os, const std::vector<PinvSweepRow>& rows) {
  os << "alpha,error2\n";
  for (const auto& r : rows) {
    os << format_number(r.alpha) << "," << format_number(r.error2) << "\n";
  }
  if (!rows.empty()) os << "# final_error " << format_number(rows.back().error2) << "\n";
}

void write_nonexistence_csv(std::ostream& os, const NonexistenceReport& report) {
  os << "net_size,resolution,one_sparse_min,gap\n";
  for (const auto& r : report.rows) {
    os << r.net_size << "," << format_number(r.resolution) << ","
       << format_number(r.one_sparse_min) << "," << format_number(r.gap) << "\n";
  }
  os << "# g_norm2 " << format_number(report.g_norm2) << "\n";
  os << "# alpha " << format_number(report.alpha) << "\n";
  if (!report.rows.empty()) {
    os << "# final_gap " << format_number(report.rows.back().gap) << "\n";
  }
}

void write_constrained_csv(std::ostream& os, const std::vector<ConstrainedDemoRow>& rows) {
  os << "delta,epsilon,chosen_index,coeff,distance,unit_distance\n";
  for (const auto& r : rows) {
    os << format_number(r.delta) << "," << format_number(r.epsilon) << "," << r.chosen_index
       << "," << format_number(r.coeff) << "," << format_number(r.distance) << ","
       << format_number(r.unit_distance) << "\n";
  }
  if (!rows.empty()) {
    double min_dist = rows.front().distance;
    for (const auto& r : rows) min_dist = std::min(min_dist, r.distance);
    os << "# min_distance " << format_number(min_dist) << "\n";
  }
}

}  // namespace spreg
