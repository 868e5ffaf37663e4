#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "simplexint/log_magnitude.hpp"
#include "simplexint/simplex_sphere.hpp"

namespace simplexint {

enum class Scheme { gauss_grid, monte_carlo, nested_oracle };

std::string_view to_string(Scheme scheme);

/// Environment variable that overrides the default evaluation budget.
inline constexpr const char* kBudgetEnvVar = "SIMPLEXINT_EVAL_BUDGET";
inline constexpr double kDefaultEvaluationBudget = 1e8;

/// kDefaultEvaluationBudget, or the value of SIMPLEXINT_EVAL_BUDGET when set.
/// Throws std::invalid_argument if the variable is set but not a positive
/// number.
double default_evaluation_budget();

/// Only the fields of the chosen scheme are read.
struct QuadratureSpec {
  Scheme scheme = Scheme::gauss_grid;
  int nodes_per_axis = 32;         // gauss_grid, separable
  std::uint64_t samples = 100000;  // monte_carlo
  std::uint64_t seed = 0;          // monte_carlo
  double rel_tol = 1e-11;          // nested_oracle
  double evaluation_budget = kDefaultEvaluationBudget;
  /// Worker threads for gauss_grid and monte_carlo; 0 means one per core.
  /// Results do not depend on this value.
  unsigned threads = 0;
};

struct IntegralEstimate {
  LogMagnitude value;
  /// 1-sigma standard error of the linear value for monte_carlo, 0 for the
  /// deterministic schemes.
  double std_error = 0.0;
  std::uint64_t evaluations = 0;
};

/// f(p) >= 0 for a point p of the simplex (size n).
using Integrand = std::function<double(std::span<const double> p)>;

/// ln f(p). Receives both p and ln p; ln p stays finite where p underflows.
using LogIntegrand =
    std::function<double(std::span<const double> p, std::span<const double> log_p)>;

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes from Newton iteration on the Legendre three-term recurrence.
/// Throws std::invalid_argument for count < 1.
GaussRule gauss_legendre(int count);

/// Integral of f over the n-bin simplex, d p_1 ... d p_{n-1}.
///
/// gauss_grid and monte_carlo integrate f(p(theta)) J(theta) over the angle
/// cube [0, pi/2]^(n-1). Monte Carlo draws theta uniformly on the cube,
/// which is not uniform on the simplex; the Jacobian weights correct for
/// that. nested_oracle forwards to nested_oracle() below.
///
/// Throws NumericalError if f is negative or non-finite at an evaluation
/// point and BudgetExceeded if the scheme would exceed the budget.
IntegralEstimate integrate_simplex(std::size_t n, const Integrand& f,
                                   const QuadratureSpec& spec);

/// As integrate_simplex, with the integrand supplied as a logarithm.
/// A return value of -inf means f = 0; NaN and +inf are errors.
IntegralEstimate integrate_simplex_log(std::size_t n, const LogIntegrand& log_f,
                                       const QuadratureSpec& spec);

/// prod_i p_i^m_i times an optional nonnegative weight over the simplex.
IntegralEstimate integrate_power_product(const ExponentVector& m, const QuadratureSpec& spec,
                                         const Integrand& weight = {});

/// prod_j integral_0^{pi/2} K_j(theta) d theta, each factor by a 1-D
/// Gauss-Legendre rule with spec.nodes_per_axis nodes.
IntegralEstimate integrate_separable(const ExponentVector& m, const QuadratureSpec& spec);

/// Largest bin count the nested oracle accepts.
inline constexpr std::size_t kOracleMaxBins = 5;

/// Iterated adaptive Gauss-Kronrod integration in the raw coordinates,
///   int_0^1 dp_1 int_0^{1-p_1} dp_2 ... f(p_1, ..., 1 - sum),
/// sharing no code with the spherical schemes. Converges to spec.rel_tol.
/// Throws std::invalid_argument for n outside [2, 5] and NumericalError on
/// non-convergence or budget exhaustion.
IntegralEstimate nested_oracle(std::size_t n, const Integrand& f, const QuadratureSpec& spec);
IntegralEstimate nested_oracle(const ExponentVector& m, const QuadratureSpec& spec);

}  // namespace simplexint
