#include "simplexint/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "simplexint/errors.hpp"
#include "simplexint/simplex_sphere.hpp"

namespace simplexint {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::uint64_t kChunkSize = 4096;

// Streaming sum of exp(l) over log terms l, shifted by the running max.
struct LogSum {
  double shift = kNegInf;
  double sum = 0.0;
  double sum_sq = 0.0;  // sum of exp(2 (l - shift)); Monte Carlo only

  void add(double l) {
    if (l == kNegInf) return;
    if (l > shift) {
      const double r = std::exp(shift - l);
      sum *= r;
      sum_sq *= r * r;
      shift = l;
    }
    const double e = std::exp(l - shift);
    sum += e;
    sum_sq += e * e;
  }

  void merge(const LogSum& other) {
    if (other.shift == kNegInf) return;
    if (shift == kNegInf) {
      *this = other;
      return;
    }
    const double hi = std::max(shift, other.shift);
    const double a = std::exp(shift - hi);
    const double b = std::exp(other.shift - hi);
    sum = sum * a + other.sum * b;
    sum_sq = sum_sq * a * a + other.sum_sq * b * b;
    shift = hi;
  }

  double log() const { return sum > 0.0 ? shift + std::log(sum) : kNegInf; }
};

// Fixed-size chunks so the partition, and therefore the rounding, does not
// depend on how many threads ran them.
template <class Fn>
std::vector<LogSum> run_chunks(std::uint64_t total, unsigned threads, Fn fn) {
  const std::uint64_t count = (total + kChunkSize - 1) / kChunkSize;
  std::vector<LogSum> out(count);
  auto run_one = [&](std::uint64_t c) {
    const std::uint64_t begin = c * kChunkSize;
    out[c] = fn(begin, std::min(total, begin + kChunkSize));
  };

  unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < count; ++c) run_one(c);
    return out;
  }

  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t c = next++; c < count && !failed; c = next++) {
        try {
          run_one(c);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

// Pairwise tree reduction in chunk order.
LogSum reduce(std::vector<LogSum> parts) {
  if (parts.empty()) return {};
  while (parts.size() > 1) {
    std::vector<LogSum> next((parts.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = parts[2 * i];
      if (2 * i + 1 < parts.size()) next[i].merge(parts[2 * i + 1]);
    }
    parts = std::move(next);
  }
  return parts.front();
}

double checked_log(double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw NumericalError("integrand returned " + std::to_string(value) +
                         "; expected a finite nonnegative value");
  }
  return std::log(value);
}

void check_log_term(double l) {
  if (std::isnan(l) || l == std::numeric_limits<double>::infinity()) {
    throw NumericalError("integrand is non-finite at an evaluation point");
  }
}

void check_bins(std::size_t n) {
  if (n < 2) throw std::invalid_argument("the simplex needs at least two bins");
}

void check_budget(double evaluations, const QuadratureSpec& spec, std::string_view what) {
  if (!(evaluations <= spec.evaluation_budget)) {
    throw BudgetExceeded(std::string(what) + " needs " + std::to_string(evaluations) +
                         " evaluations, over the budget of " +
                         std::to_string(spec.evaluation_budget));
  }
}

// Gauss rule on [0, pi/2] with log weights.
struct AngleRule {
  std::vector<double> theta;
  std::vector<double> log_weight;
};

AngleRule angle_rule(int count) {
  const GaussRule rule = gauss_legendre(count);
  constexpr double kHalfWidth = std::numbers::pi / 4.0;
  AngleRule out;
  out.theta.reserve(rule.nodes.size());
  out.log_weight.reserve(rule.nodes.size());
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    out.theta.push_back(kHalfWidth * (rule.nodes[k] + 1.0));
    out.log_weight.push_back(std::log(kHalfWidth * rule.weights[k]));
  }
  return out;
}

IntegralEstimate gauss_grid(std::size_t n, const LogIntegrand& log_f, const QuadratureSpec& spec) {
  if (spec.nodes_per_axis < 2) throw std::invalid_argument("nodes_per_axis must be >= 2");
  const std::size_t axes = n - 1;
  const auto k = static_cast<std::uint64_t>(spec.nodes_per_axis);
  check_budget(std::pow(static_cast<double>(k), static_cast<double>(axes)), spec, "gauss_grid");
  std::uint64_t total = 1;
  for (std::size_t a = 0; a < axes; ++a) total *= k;

  const AngleRule rule = angle_rule(spec.nodes_per_axis);
  // Per-node tables: sin^2, cos^2, their logs, and per-axis Jacobian+weight.
  std::vector<double> sin2(k), cos2(k), log_sin2(k), log_cos2(k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto [s, c] = quarter_sincos(rule.theta[j]);
    sin2[j] = s * s;
    cos2[j] = c * c;
    log_sin2[j] = 2.0 * std::log(s);
    log_cos2[j] = 2.0 * std::log(c);
  }
  std::vector<double> axis_log(axes * k);
  for (std::size_t a = 0; a < axes; ++a) {
    for (std::size_t j = 0; j < k; ++j) {
      axis_log[a * k + j] =
          detail::log_jacobian_factor(a, axes, rule.theta[j]) + rule.log_weight[j];
    }
  }

  auto chunk = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<std::size_t> digit(axes);
    std::uint64_t rem = begin;
    for (std::size_t a = axes; a-- > 0;) {
      digit[a] = static_cast<std::size_t>(rem % k);
      rem /= k;
    }
    std::vector<double> p(n), log_p(n);
    LogSum acc;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      double s2 = 1.0;
      double ls2 = 0.0;
      double weight = 0.0;
      for (std::size_t a = 0; a < axes; ++a) {
        const std::size_t j = digit[a];
        p[a] = s2 * cos2[j];
        log_p[a] = ls2 + log_cos2[j];
        s2 *= sin2[j];
        ls2 += log_sin2[j];
        weight += axis_log[a * k + j];
      }
      p[axes] = s2;
      log_p[axes] = ls2;
      const double l = log_f(p, log_p);
      check_log_term(l);
      acc.add(l + weight);

      for (std::size_t a = axes; a-- > 0;) {
        if (++digit[a] < k) break;
        digit[a] = 0;
      }
    }
    return acc;
  };

  const LogSum sum = reduce(run_chunks(total, spec.threads, chunk));
  return {LogMagnitude::from_log(sum.log()), 0.0, total};
}

// SplitMix64 output number `index` of the stream seeded with `seed`. The
// generator is a bijective mix of seed + (index + 1) * gamma, so any sample
// can be drawn without stepping through the ones before it.
double uniform(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

IntegralEstimate monte_carlo(std::size_t n, const LogIntegrand& log_f, const QuadratureSpec& spec) {
  if (spec.samples < 1) throw std::invalid_argument("samples must be >= 1");
  check_budget(static_cast<double>(spec.samples), spec, "monte_carlo");
  const std::size_t axes = n - 1;
  const double log_volume = static_cast<double>(axes) * std::log(kHalfPi);

  // Sample s, axis a uses stream element s * axes + a.
  auto chunk = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<double> theta(axes), p(n), log_p(n);
    LogSum acc;
    for (std::uint64_t s = begin; s < end; ++s) {
      for (std::size_t a = 0; a < axes; ++a) {
        theta[a] = kHalfPi * uniform(spec.seed, s * axes + a);
      }
      detail::map_angles(theta, p, log_p);
      const double l = log_f(p, log_p);
      check_log_term(l);
      acc.add(l + detail::log_jacobian(theta) + log_volume);
    }
    return acc;
  };

  const LogSum sum = reduce(run_chunks(spec.samples, spec.threads, chunk));
  const auto samples = static_cast<double>(spec.samples);
  IntegralEstimate est;
  est.evaluations = spec.samples;
  est.value = LogMagnitude::from_log(sum.log() - std::log(samples));
  if (sum.shift == kNegInf) return est;
  if (spec.samples < 2) {
    est.std_error = std::numeric_limits<double>::infinity();
    return est;
  }
  const double centered = std::max(0.0, sum.sum_sq - sum.sum * sum.sum / samples);
  est.std_error = std::exp(sum.shift) * std::sqrt(centered / ((samples - 1.0) * samples));
  return est;
}

}  // namespace

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::gauss_grid:
      return "gauss_grid";
    case Scheme::monte_carlo:
      return "monte_carlo";
    case Scheme::nested_oracle:
      return "nested_oracle";
  }
  return "unknown";
}

double default_evaluation_budget() {
  const char* raw = std::getenv(kBudgetEnvVar);
  if (raw == nullptr || *raw == '\0') return kDefaultEvaluationBudget;
  char* end = nullptr;
  const double value = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(value > 0.0)) {
    throw std::invalid_argument(std::string(kBudgetEnvVar) + " must be a positive number, got '" +
                                raw + "'");
  }
  return value;
}

GaussRule gauss_legendre(int count) {
  if (count < 1) throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
  const auto n = static_cast<std::size_t>(count);
  GaussRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  // Roots are symmetric; solve for the positive half and mirror.
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      derivative = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / derivative;
      x -= dx;
      if (std::abs(dx) <= 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

IntegralEstimate integrate_simplex_log(std::size_t n, const LogIntegrand& log_f,
                                       const QuadratureSpec& spec) {
  check_bins(n);
  switch (spec.scheme) {
    case Scheme::gauss_grid:
      return gauss_grid(n, log_f, spec);
    case Scheme::monte_carlo:
      return monte_carlo(n, log_f, spec);
    case Scheme::nested_oracle:
      return nested_oracle(
          n,
          [&](std::span<const double> p) {
            std::vector<double> log_p(p.size());
            std::transform(p.begin(), p.end(), log_p.begin(),
                           [](double v) { return std::log(v); });
            const double l = log_f(p, log_p);
            check_log_term(l);
            return std::exp(l);
          },
          spec);
  }
  throw std::invalid_argument("unknown quadrature scheme");
}

IntegralEstimate integrate_simplex(std::size_t n, const Integrand& f, const QuadratureSpec& spec) {
  check_bins(n);
  if (spec.scheme == Scheme::nested_oracle) return nested_oracle(n, f, spec);
  return integrate_simplex_log(
      n, [&](std::span<const double> p, std::span<const double>) { return checked_log(f(p)); },
      spec);
}

IntegralEstimate integrate_power_product(const ExponentVector& m, const QuadratureSpec& spec,
                                         const Integrand& weight) {
  const std::span<const double> exps = m.values();
  if (spec.scheme == Scheme::nested_oracle) {
    return nested_oracle(
        m.bins(),
        [&](std::span<const double> p) {
          double v = 1.0;
          for (std::size_t i = 0; i < p.size(); ++i) v *= std::pow(p[i], exps[i]);
          if (weight) v *= std::exp(checked_log(weight(p)));
          return v;
        },
        spec);
  }
  return integrate_simplex_log(
      m.bins(),
      [&](std::span<const double> p, std::span<const double> log_p) {
        double l = 0.0;
        for (std::size_t i = 0; i < log_p.size(); ++i) l += detail::scaled_log(exps[i], log_p[i]);
        if (weight) l += checked_log(weight(p));
        return l;
      },
      spec);
}

IntegralEstimate integrate_separable(const ExponentVector& m, const QuadratureSpec& spec) {
  if (spec.nodes_per_axis < 2) throw std::invalid_argument("nodes_per_axis must be >= 2");
  const std::size_t axes = m.bins() - 1;
  const double evaluations = static_cast<double>(axes) * spec.nodes_per_axis;
  check_budget(evaluations, spec, "separable quadrature");

  const AngleRule rule = angle_rule(spec.nodes_per_axis);
  double log_total = 0.0;
  for (std::size_t j = 0; j < axes; ++j) {
    LogSum axis;
    for (std::size_t k = 0; k < rule.theta.size(); ++k) {
      const double l = log_kernel(j, m, rule.theta[k]);
      check_log_term(l);
      axis.add(l + rule.log_weight[k]);
    }
    log_total += axis.log();
  }
  return {LogMagnitude::from_log(log_total), 0.0, static_cast<std::uint64_t>(evaluations)};
}

IntegralEstimate nested_oracle(std::size_t n, const Integrand& f, const QuadratureSpec& spec) {
  if (n < 2 || n > kOracleMaxBins) {
    throw std::invalid_argument("nested oracle supports 2 to " + std::to_string(kOracleMaxBins) +
                                " bins, got " + std::to_string(n));
  }
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  constexpr unsigned kMaxDepth = 15;
  const double tol = spec.rel_tol;

  std::uint64_t evaluations = 0;
  std::vector<double> p(n, 0.0);

  auto leaf = [&]() {
    if (++evaluations > spec.evaluation_budget) {
      throw BudgetExceeded("nested oracle exceeded the evaluation budget of " +
                           std::to_string(spec.evaluation_budget));
    }
    const double v = f(p);
    if (!std::isfinite(v) || v < 0.0) {
      throw NumericalError("integrand returned " + std::to_string(v) +
                           "; expected a finite nonnegative value");
    }
    return v;
  };

  // Integrates over p[level] in [0, remaining]; the innermost level sets
  // p[n-1] = remaining - p[n-2].
  //
  // Each level runs on u in [0, 1] with p[level] = remaining * u. Boost's
  // adaptive rule compares an error estimate taken on [-1, 1] against a
  // tolerance scaled by the interval length, so on the short intervals near
  // the simplex edge it would never stop refining before max depth.
  std::function<double(std::size_t, double, double*, double*)> level_integral =
      [&](std::size_t level, double remaining, double* error, double* l1) -> double {
    if (remaining <= 0.0) return 0.0;
    auto body = [&](double u) -> double {
      const double x = remaining * u;
      p[level] = x;
      if (level + 2 == n) {
        p[n - 1] = std::max(0.0, remaining - x);
        return remaining * leaf();
      }
      return remaining * level_integral(level + 1, remaining - x, nullptr, nullptr);
    };
    return Rule::integrate(body, 0.0, 1.0, kMaxDepth, tol, error, l1);
  };

  // Inner levels refine to the same tolerance; the outermost level carries
  // the convergence check.
  double error = 0.0;
  double l1 = 0.0;
  const double value = level_integral(0, 1.0, &error, &l1);
  if (!(error <= tol * l1) && error > std::numeric_limits<double>::min()) {
    throw NumericalError("nested oracle did not converge: error estimate " +
                         std::to_string(error) + " for value " + std::to_string(value));
  }
  return {value > 0.0 ? LogMagnitude::from_log(std::log(value)) : LogMagnitude::zero(), 0.0,
          evaluations};
}

IntegralEstimate nested_oracle(const ExponentVector& m, const QuadratureSpec& spec) {
  const std::span<const double> exps = m.values();
  return nested_oracle(
      m.bins(),
      [&](std::span<const double> p) {
        double v = 1.0;
        for (std::size_t i = 0; i < p.size(); ++i) v *= std::pow(p[i], exps[i]);
        return v;
      },
      spec);
}

}  // namespace simplexint
