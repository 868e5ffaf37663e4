#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "simplexint/log_magnitude.hpp"
#include "simplexint/simplex_sphere.hpp"

namespace simplexint {

/// Per-bin moment orders a_i; the expectation E[prod_i p_i^a_i] is taken
/// under the posterior with density proportional to prod_i p_i^m_i.
class MomentIndex {
 public:
  /// Throws std::invalid_argument on non-finite entries.
  explicit MomentIndex(std::vector<double> orders);

  /// order * e_bin in an n-bin index.
  static MomentIndex unit(std::size_t bins, std::size_t bin, double order = 1.0);
  static MomentIndex zeros(std::size_t bins);

  std::size_t size() const { return a_.size(); }
  std::span<const double> values() const { return a_; }
  double operator[](std::size_t i) const { return a_[i]; }

  friend MomentIndex operator+(const MomentIndex& lhs, const MomentIndex& rhs);

 private:
  std::vector<double> a_;
};

/// m + a. Throws std::invalid_argument if sizes differ or any shifted
/// exponent is <= -1.
ExponentVector shifted(const ExponentVector& m, const MomentIndex& a);

/// ln I(m) = sum_i ln Gamma(m_i + 1) - ln Gamma(sum_i (m_i + 1)), the
/// integral of prod_i p_i^m_i over the simplex. For integer counts this is
/// ln[ prod_i m_i! / (N + n - 1)! ].
LogMagnitude log_normalizer(const ExponentVector& m);

/// E[prod_i p_i^a_i] = I(m + a) / I(m), evaluated as a log-ratio.
double moment(const ExponentVector& m, const MomentIndex& a);

/// Bin indices below are 0-based; std::out_of_range on a bad index.

/// (m_i + 1) / (N + n).
double mean(const ExponentVector& m, std::size_t i);

/// (m_i + 2)(m_i + 1) / ((N + n + 1)(N + n)).
double second_moment(const ExponentVector& m, std::size_t i);

/// (m_i + 1)(N + n - m_i - 1) / ((N + n)^2 (N + n + 1)).
double variance(const ExponentVector& m, std::size_t i);

double std_dev(const ExponentVector& m, std::size_t i);

/// Central third moment over variance^(3/2), from the raw moments
/// E[p_i], E[p_i^2], E[p_i^3].
double skewness(const ExponentVector& m, std::size_t i);

/// E[p_i p_j] - E[p_i] E[p_j].
double covariance(const ExponentVector& m, std::size_t i, std::size_t j);

}  // namespace simplexint
