#include "simplexint/simplex_sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace simplexint {
namespace {

constexpr double kLn2 = std::numbers::ln2;

void check_angle(double theta) {
  if (!(theta >= 0.0 && theta <= kHalfPi)) {
    throw std::invalid_argument("angle " + std::to_string(theta) +
                                " outside [0, pi/2]");
  }
}

}  // namespace

AngleVector::AngleVector(std::vector<double> theta) : theta_(std::move(theta)) {
  if (theta_.empty()) {
    throw std::invalid_argument("AngleVector needs at least one angle (n >= 2)");
  }
  std::for_each(theta_.begin(), theta_.end(), check_angle);
}

SimplexPoint::SimplexPoint(std::vector<double> p) : p_(std::move(p)) {
  if (p_.size() < 2) {
    throw std::invalid_argument("SimplexPoint needs at least two components");
  }
  for (double v : p_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("SimplexPoint components must be finite and >= 0");
    }
  }
  const double sum = std::accumulate(p_.begin(), p_.end(), 0.0);
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("SimplexPoint components must sum to 1");
  }
}

ExponentVector::ExponentVector(std::vector<double> m) : m_(std::move(m)) {
  if (m_.size() < 2) {
    throw std::invalid_argument("ExponentVector needs at least two bins");
  }
  for (double v : m_) {
    if (!std::isfinite(v) || !(v > -1.0)) {
      throw std::invalid_argument("exponents must be finite and > -1, got " +
                                  std::to_string(v));
    }
  }
}

double ExponentVector::total() const {
  return std::accumulate(m_.begin(), m_.end(), 0.0);
}

QuarterSinCos quarter_sincos(double theta) {
  if (theta == 0.0) return {0.0, 1.0};
  if (theta == kHalfPi) return {1.0, 0.0};
  return {std::sin(theta), std::cos(theta)};
}

namespace detail {

double scaled_log(double exponent, double log_x) {
  return exponent == 0.0 ? 0.0 : exponent * log_x;
}

void map_angles(std::span<const double> theta, std::span<double> p,
                std::span<double> log_p) {
  double sin2 = 1.0;
  double log_sin2 = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const auto [s, c] = quarter_sincos(theta[i]);
    p[i] = sin2 * (c * c);
    log_p[i] = log_sin2 + 2.0 * std::log(c);
    sin2 *= s * s;
    log_sin2 += 2.0 * std::log(s);
  }
  p[theta.size()] = sin2;
  log_p[theta.size()] = log_sin2;
}

double log_jacobian_factor(std::size_t axis, std::size_t axes, double theta) {
  const auto [s, c] = quarter_sincos(theta);
  const double log_s = std::log(s);
  return kLn2 + log_s + std::log(c) +
         scaled_log(2.0 * static_cast<double>(axes - 1 - axis), log_s);
}

double log_jacobian(std::span<const double> theta) {
  double acc = 0.0;
  for (std::size_t k = 0; k < theta.size(); ++k) {
    acc += log_jacobian_factor(k, theta.size(), theta[k]);
  }
  return acc;
}

}  // namespace detail

SimplexPoint angles_to_simplex(const AngleVector& angles) {
  std::vector<double> p(angles.bins());
  std::vector<double> log_p(angles.bins());
  detail::map_angles(angles.values(), p, log_p);
  return SimplexPoint(std::move(p));
}

AngleVector simplex_to_angles(const SimplexPoint& point) {
  const std::size_t n = point.size();
  // tail[i] = sum_{j >= i} p_j, summed from the back to avoid 1 - sum.
  std::vector<double> tail(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) tail[i] = tail[i + 1] + point[i];

  std::vector<double> theta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double head = point[i];
    const double rest = tail[i + 1];
    if (head == 0.0 && rest == 0.0) {
      theta[i] = kHalfPi;
    } else {
      theta[i] = std::min(std::atan2(std::sqrt(rest), std::sqrt(head)), kHalfPi);
    }
  }
  return AngleVector(std::move(theta));
}

LogMagnitude log_jacobian(const AngleVector& angles) {
  return LogMagnitude::from_log(detail::log_jacobian(angles.values()));
}

double log_kernel(std::size_t j, const ExponentVector& m, double theta) {
  const std::size_t n = m.bins();
  if (j + 1 >= n) {
    throw std::out_of_range("kernel index " + std::to_string(j) +
                            " out of range for " + std::to_string(n) + " bins");
  }
  check_angle(theta);
  double tail = 0.0;
  for (std::size_t l = j + 1; l < n; ++l) tail += 1.0 + m[l];

  const auto [s, c] = quarter_sincos(theta);
  return kLn2 + detail::scaled_log(2.0 * (m[j] + 1.0) - 1.0, std::log(c)) +
         detail::scaled_log(2.0 * tail - 1.0, std::log(s));
}

}  // namespace simplexint
