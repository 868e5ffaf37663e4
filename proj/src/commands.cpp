#include "simplexint/commands.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "simplexint/errors.hpp"
#include "simplexint/exact_moments.hpp"
#include "simplexint/prior_expr.hpp"

namespace simplexint::cli {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view text) {
  const std::string_view t = trim(text);
  double value = 0.0;
  const char* first = t.data();
  if (!t.empty() && t.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(value)) {
    throw std::invalid_argument("'" + std::string(t) + "' is not a finite number");
  }
  return value;
}

// JSON has no infinity; non-representable values become null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json estimate_json(const IntegralEstimate& e) {
  const double linear = e.value.linear();
  return {
      {"log_value", number_or_null(e.value.log_value())},
      {"value", (linear > 0.0 && std::isfinite(linear)) || e.value.is_zero()
                    ? json(linear)
                    : json(nullptr)},
      {"std_error", number_or_null(e.std_error)},
      {"evaluations", e.evaluations},
  };
}

json defaults_json() {
  return {
      {"compare_tol", kDefaultCompareTol},
      {"gauss_nodes", kDefaultGaussNodes},
      {"mc_samples", QuadratureSpec{}.samples},
      {"oracle_rel_tol", kDefaultOracleRelTol},
      {"evaluation_budget", kDefaultEvaluationBudget},
  };
}

json spec_json(const QuadratureSpec& spec) {
  json out = {{"scheme", to_string(spec.scheme)}, {"evaluation_budget", spec.evaluation_budget}};
  switch (spec.scheme) {
    case Scheme::gauss_grid:
      out["nodes_per_axis"] = spec.nodes_per_axis;
      break;
    case Scheme::monte_carlo:
      out["samples"] = spec.samples;
      out["seed"] = spec.seed;
      break;
    case Scheme::nested_oracle:
      out["rel_tol"] = spec.rel_tol;
      break;
  }
  return out;
}

MomentIndex to_moment_index(const std::vector<std::size_t>& bins, std::size_t n) {
  std::vector<double> orders(n, 0.0);
  for (std::size_t b : bins) {
    if (b < 1 || b > n) {
      throw std::invalid_argument("moment bin " + std::to_string(b) + " outside 1.." +
                                  std::to_string(n));
    }
    orders[b - 1] += 1.0;
  }
  return MomentIndex(std::move(orders));
}

RunReport base_report(const CommonOptions& common) {
  RunReport r;
  r.command = common.command;
  r.inputs = {{"counts", common.counts}, {"counts_source", common.counts_source}};
  if (!common.moments.empty()) r.inputs["moments"] = common.moments;
  r.defaults = defaults_json();
  return r;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

std::vector<double> parse_counts_inline(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_number(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> parse_counts_file(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    view = trim(view.substr(0, view.find('#')));
    if (view.empty()) continue;
    try {
      out.push_back(parse_number(view));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("counts file line " + std::to_string(line_no) + ": " +
                                  e.what());
    }
  }
  return out;
}

std::vector<std::size_t> parse_moment_bins(std::string_view text) {
  std::vector<std::size_t> bins;
  for (double v : parse_counts_inline(text)) {
    if (v < 1.0 || v != std::floor(v)) {
      throw std::invalid_argument("moment bins must be positive integers");
    }
    bins.push_back(static_cast<std::size_t>(v));
  }
  return bins;
}

CommandResult run_moments(const CommonOptions& common) {
  const Stopwatch clock;
  const ExponentVector m(common.counts);
  const std::size_t n = m.bins();

  CommandResult out;
  out.report = base_report(common);
  json bins = json::array();
  double sum_of_means = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double mu = mean(m, i);
    sum_of_means += mu;
    bins.push_back({
        {"bin", i + 1},
        {"mean", mu},
        {"variance", variance(m, i)},
        {"std_dev", std_dev(m, i)},
        {"skewness", skewness(m, i)},
    });
    out.plain.push_back(mu);
  }
  json& results = out.report.results;
  results["bins"] = std::move(bins);
  results["sum_of_means"] = sum_of_means;
  results["log_normalizer"] = log_normalizer(m).log_value();

  if (!common.moments.empty()) {
    json moments = json::array();
    for (const auto& request : common.moments) {
      const MomentIndex a = to_moment_index(request, n);
      const double value = moment(m, a);
      moments.push_back({{"bins", request},
                         {"orders", std::vector<double>(a.values().begin(), a.values().end())},
                         {"value", value}});
      out.plain.push_back(value);
    }
    results["moments"] = std::move(moments);
  }
  out.report.wall_time_s = clock.seconds();
  return out;
}

CommandResult run_integrate(const CommonOptions& common, const IntegrateOptions& options) {
  const Stopwatch clock;
  const ExponentVector m(common.counts);
  const PriorExpression prior = PriorExpression::parse(options.prior);
  prior.check_bins(m.bins());
  std::vector<MomentIndex> indices;
  for (const auto& request : common.moments) indices.push_back(to_moment_index(request, m.bins()));

  CommandResult out;
  out.report = base_report(common);
  out.report.inputs["prior"] = options.prior;
  out.report.inputs["prior_canonical"] = prior.to_string();
  out.report.inputs["spec"] = spec_json(options.spec);

  const Integrand weight = [&](std::span<const double> p) { return prior.evaluate(p); };
  const IntegralEstimate base = integrate_power_product(m, options.spec, weight);
  std::uint64_t evaluations = base.evaluations;

  json& results = out.report.results;
  results["integral"] = estimate_json(base);
  out.plain.push_back(base.value.linear());
  out.plain.push_back(base.std_error);

  if (!indices.empty()) {
    if (base.value.is_zero()) throw NumericalError("integral is zero; moment ratios undefined");
    json moments = json::array();
    for (std::size_t k = 0; k < indices.size(); ++k) {
      const IntegralEstimate shifted_est =
          integrate_power_product(shifted(m, indices[k]), options.spec, weight);
      evaluations += shifted_est.evaluations;
      const double ratio = std::exp(shifted_est.value.log_value() - base.value.log_value());
      moments.push_back({{"bins", common.moments[k]},
                         {"value", ratio},
                         {"shifted_integral", estimate_json(shifted_est)}});
      out.plain.push_back(ratio);
    }
    results["moments"] = std::move(moments);
  }
  out.report.evaluations = evaluations;
  out.report.wall_time_s = clock.seconds();
  return out;
}

CommandResult run_compare(const CommonOptions& common, const CompareOptions& options) {
  const Stopwatch clock;
  const ExponentVector m(common.counts);
  if (!(options.tol > 0.0)) throw std::invalid_argument("--tol must be positive");

  CommandResult out;
  out.report = base_report(common);
  out.report.inputs["tol"] = options.tol;
  out.report.inputs["nodes"] = options.nodes;
  out.report.inputs["oracle_rel_tol"] = options.oracle_rel_tol;
  out.report.inputs["evaluation_budget"] = options.evaluation_budget;

  QuadratureSpec grid_spec;
  grid_spec.scheme = Scheme::gauss_grid;
  grid_spec.nodes_per_axis = options.nodes;
  grid_spec.evaluation_budget = options.evaluation_budget;

  struct Path {
    std::string name;
    LogMagnitude value;
  };
  std::vector<Path> paths;
  json path_json = json::object();
  std::uint64_t evaluations = 0;

  const LogMagnitude exact = log_normalizer(m);
  paths.push_back({"exact", exact});
  path_json["exact"] = {{"log_value", exact.log_value()}, {"value", exact.linear()}};

  const IntegralEstimate separable = integrate_separable(m, grid_spec);
  paths.push_back({"separable", separable.value});
  path_json["separable"] = estimate_json(separable);
  evaluations += separable.evaluations;

  try {
    const IntegralEstimate grid = integrate_power_product(m, grid_spec);
    paths.push_back({"grid", grid.value});
    path_json["grid"] = estimate_json(grid);
    evaluations += grid.evaluations;
  } catch (const BudgetExceeded& e) {
    path_json["grid"] = {{"skipped", e.what()}};
  }

  if (m.bins() <= kOracleMaxBins) {
    QuadratureSpec oracle_spec;
    oracle_spec.scheme = Scheme::nested_oracle;
    oracle_spec.rel_tol = options.oracle_rel_tol;
    oracle_spec.evaluation_budget = options.evaluation_budget;
    try {
      const IntegralEstimate oracle = nested_oracle(m, oracle_spec);
      paths.push_back({"oracle", oracle.value});
      path_json["oracle"] = estimate_json(oracle);
      evaluations += oracle.evaluations;
    } catch (const BudgetExceeded& e) {
      path_json["oracle"] = {{"skipped", e.what()}};
    }
  } else {
    path_json["oracle"] = {
        {"skipped", "nested oracle supports at most " + std::to_string(kOracleMaxBins) + " bins"}};
  }

  json deviations = json::array();
  double worst = 0.0;
  for (std::size_t a = 0; a < paths.size(); ++a) {
    for (std::size_t b = a + 1; b < paths.size(); ++b) {
      const double dev = relative_difference(paths[a].value, paths[b].value);
      worst = std::max(worst, dev);
      deviations.push_back({{"a", paths[a].name}, {"b", paths[b].name}, {"relative", dev}});
    }
  }

  const bool ok = worst <= options.tol;
  json& results = out.report.results;
  results["paths"] = std::move(path_json);
  results["deviations"] = std::move(deviations);
  results["max_deviation"] = worst;
  results["within_tolerance"] = ok;

  for (const auto& p : paths) out.plain.push_back(p.value.linear());
  out.plain.push_back(worst);
  out.exit_code = ok ? kExitOk : kExitToleranceBreach;
  out.report.evaluations = evaluations;
  out.report.wall_time_s = clock.seconds();
  return out;
}

}  // namespace simplexint::cli
