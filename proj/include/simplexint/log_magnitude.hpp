#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace simplexint {

/// A nonnegative real stored as its natural logarithm.
///
/// Normalization integrals over the simplex fall below the smallest double
/// for a few hundred counts, so every integral and Beta/Gamma product is
/// carried in this form. Negative infinity encodes an exact zero.
class LogMagnitude {
 public:
  constexpr LogMagnitude() = default;

  static constexpr LogMagnitude from_log(double log_value) {
    LogMagnitude m;
    m.log_value_ = log_value;
    return m;
  }

  static LogMagnitude from_linear(double value) {
    if (!(value >= 0.0)) {
      throw std::domain_error("LogMagnitude: value must be nonnegative");
    }
    return from_log(std::log(value));
  }

  static constexpr LogMagnitude zero() {
    return from_log(-std::numeric_limits<double>::infinity());
  }
  static constexpr LogMagnitude one() { return from_log(0.0); }

  constexpr double log_value() const { return log_value_; }

  /// exp(log_value); underflows to 0 or overflows to +inf when the
  /// magnitude is not representable as a double.
  double linear() const { return std::exp(log_value_); }

  bool is_zero() const { return std::isinf(log_value_) && log_value_ < 0; }

  friend constexpr LogMagnitude operator*(LogMagnitude a, LogMagnitude b) {
    return from_log(a.log_value_ + b.log_value_);
  }
  friend constexpr LogMagnitude operator/(LogMagnitude a, LogMagnitude b) {
    return from_log(a.log_value_ - b.log_value_);
  }
  LogMagnitude& operator*=(LogMagnitude other) {
    log_value_ += other.log_value_;
    return *this;
  }
  LogMagnitude& operator/=(LogMagnitude other) {
    log_value_ -= other.log_value_;
    return *this;
  }

  friend constexpr bool operator==(LogMagnitude, LogMagnitude) = default;

 private:
  double log_value_ = -std::numeric_limits<double>::infinity();
};

/// Relative difference |a - b| / b of two magnitudes, computed from the
/// log values so that it stays meaningful when both underflow.
inline double relative_difference(LogMagnitude a, LogMagnitude b) {
  if (a.is_zero() && b.is_zero()) return 0.0;
  return std::abs(std::expm1(a.log_value() - b.log_value()));
}

}  // namespace simplexint
