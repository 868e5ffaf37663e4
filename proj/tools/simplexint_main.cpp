// simplexint: exact Dirichlet posterior moments and integration over the
// probability simplex.
//
//   simplexint moments   --counts 2,0,1
//   simplexint integrate --counts 1,1,1 --prior "p1^0.5" --scheme gauss --nodes 32
//   simplexint compare   --counts 1,1,1 --tol 1e-9
//
// The report goes to stdout; diagnostics go to stderr. Exit codes: 0 ok,
// 2 input error, 3 numerical failure, 4 tolerance breach.

#include <CLI11.hpp>
#include <array>
#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>

#include "simplexint/commands.hpp"
#include "simplexint/errors.hpp"

namespace {

using namespace simplexint;

struct Args {
  std::string counts;
  std::string counts_file;
  std::vector<std::string> moments;
  bool plain = false;

  std::string prior = "1";
  std::string scheme = "gauss";
  int nodes = cli::kDefaultGaussNodes;
  std::uint64_t samples = QuadratureSpec{}.samples;
  std::uint64_t seed = 0;
  double oracle_tol = cli::kDefaultOracleRelTol;
  double tol = cli::kDefaultCompareTol;
};

void add_common(CLI::App* cmd, Args& args) {
  auto* inline_opt = cmd->add_option("--counts", args.counts, "comma-separated counts m_1,...,m_n");
  auto* file_opt =
      cmd->add_option("--counts-file", args.counts_file, "file with one count per line");
  inline_opt->excludes(file_opt);
  cmd->add_option("--moment", args.moments,
                  "moment multi-index as 1-based bins, e.g. 1,1 or 1,2 (repeatable)");
  cmd->add_flag("--plain", args.plain, "print bare numbers, one per line");
}

cli::CommonOptions common_options(const Args& args, const std::string& command) {
  cli::CommonOptions common;
  common.command = command;
  if (!args.counts_file.empty()) {
    std::ifstream in(args.counts_file);
    if (!in) throw std::invalid_argument("cannot open counts file '" + args.counts_file + "'");
    common.counts = cli::parse_counts_file(in);
    common.counts_source = args.counts_file;
  } else if (!args.counts.empty()) {
    common.counts = cli::parse_counts_inline(args.counts);
  } else {
    throw std::invalid_argument("one of --counts or --counts-file is required");
  }
  for (const auto& m : args.moments) common.moments.push_back(cli::parse_moment_bins(m));
  return common;
}

std::string format_plain(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

int emit(const cli::CommandResult& result, bool plain) {
  if (plain) {
    for (double v : result.plain) std::cout << format_plain(v) << '\n';
  } else {
    std::cout << result.report.serialize();
  }
  std::cout.flush();
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Dirichlet posterior moments and simplex integration"};
  app.require_subcommand(1);
  Args args;

  auto* moments = app.add_subcommand("moments", "exact posterior moments for every bin");
  add_common(moments, args);

  auto* integrate = app.add_subcommand("integrate", "integrate prod p_i^m_i * prior(p)");
  add_common(integrate, args);
  integrate->add_option("--prior", args.prior, "prior expression over p1..pn")
      ->capture_default_str();
  integrate->add_option("--scheme", args.scheme, "quadrature scheme")
      ->check(CLI::IsMember({"gauss", "mc", "oracle"}))
      ->capture_default_str();
  integrate->add_option("--nodes", args.nodes, "Gauss nodes per axis")->capture_default_str();
  integrate->add_option("--samples", args.samples, "Monte Carlo samples")->capture_default_str();
  integrate->add_option("--seed", args.seed, "Monte Carlo seed")->capture_default_str();
  integrate->add_option("--tol", args.oracle_tol, "nested oracle relative tolerance")
      ->capture_default_str();

  auto* compare = app.add_subcommand("compare", "exact vs separable vs grid vs nested oracle");
  add_common(compare, args);
  compare->add_option("--nodes", args.nodes, "Gauss nodes per axis")->capture_default_str();
  compare->add_option("--tol", args.tol, "largest allowed relative deviation")
      ->capture_default_str();
  compare->add_option("--oracle-tol", args.oracle_tol, "nested oracle relative tolerance")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitInputError;
  }

  std::string command = "simplexint";
  for (int i = 1; i < argc; ++i) command += std::string(" ") + argv[i];

  try {
    const cli::CommonOptions common = common_options(args, command);
    const double budget = default_evaluation_budget();
    if (moments->parsed()) return emit(cli::run_moments(common), args.plain);

    if (integrate->parsed()) {
      static const std::map<std::string, Scheme> kSchemes = {
          {"gauss", Scheme::gauss_grid},
          {"mc", Scheme::monte_carlo},
          {"oracle", Scheme::nested_oracle},
      };
      cli::IntegrateOptions options;
      options.prior = args.prior;
      options.spec.scheme = kSchemes.at(args.scheme);
      options.spec.nodes_per_axis = args.nodes;
      options.spec.samples = args.samples;
      options.spec.seed = args.seed;
      options.spec.rel_tol = args.oracle_tol;
      options.spec.evaluation_budget = budget;
      return emit(cli::run_integrate(common, options), args.plain);
    }

    cli::CompareOptions options;
    options.nodes = args.nodes;
    options.tol = args.tol;
    options.oracle_rel_tol = args.oracle_tol;
    options.evaluation_budget = budget;
    const auto result = cli::run_compare(common, options);
    if (result.exit_code == cli::kExitToleranceBreach) {
      std::cerr << "compare: deviation exceeds tolerance " << args.tol << '\n';
    }
    return emit(result, args.plain);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return cli::kExitInputError;
  } catch (const std::out_of_range& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return cli::kExitInputError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return cli::kExitNumericalFailure;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return cli::kExitNumericalFailure;
  }
}
