#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "simplexint/quadrature.hpp"
#include "simplexint/report.hpp"

namespace simplexint::cli {

/// Process exit codes. Part of the CLI contract.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 2,
  kExitNumericalFailure = 3,
  kExitToleranceBreach = 4,
};

inline constexpr int kDefaultGaussNodes = 32;
inline constexpr double kDefaultCompareTol = 1e-8;
inline constexpr double kDefaultOracleRelTol = 1e-12;

/// "2, 0,1" -> {2, 0, 1}. Throws std::invalid_argument on empty fields or
/// text that is not a number.
std::vector<double> parse_counts_inline(std::string_view text);

/// One value per line; '#' starts a comment; blank lines are skipped.
std::vector<double> parse_counts_file(std::istream& in);

/// "1,1,2" -> 1-based bin list for a moment multi-index.
std::vector<std::size_t> parse_moment_bins(std::string_view text);

struct CommonOptions {
  std::vector<double> counts;
  std::string counts_source = "inline";
  /// Each entry is a list of 1-based bins; repeats raise the order.
  std::vector<std::vector<std::size_t>> moments;
  std::string command;  // echoed into the report
};

struct IntegrateOptions {
  std::string prior = "1";
  QuadratureSpec spec;
};

struct CompareOptions {
  int nodes = kDefaultGaussNodes;
  double tol = kDefaultCompareTol;
  double oracle_rel_tol = kDefaultOracleRelTol;
  double evaluation_budget = kDefaultEvaluationBudget;
};

struct CommandResult {
  RunReport report;
  int exit_code = kExitOk;
  /// Values for --plain output, one per line.
  std::vector<double> plain;
};

/// Exact posterior mean, variance, std_dev and skewness for every bin.
/// Throws std::invalid_argument on bad counts or moment bins.
CommandResult run_moments(const CommonOptions& common);

/// Integral of prod p_i^m_i * prior(p) over the simplex, plus prior-weighted
/// moment ratios. Throws std::invalid_argument on input errors and
/// NumericalError / EvaluationError when integration fails.
CommandResult run_integrate(const CommonOptions& common, const IntegrateOptions& options);

/// Exact, separable, grid and (n <= 5) nested-oracle values of I(m) and
/// their pairwise relative deviations. Exit code 4 when any deviation
/// exceeds options.tol.
CommandResult run_compare(const CommonOptions& common, const CompareOptions& options);

}  // namespace simplexint::cli
