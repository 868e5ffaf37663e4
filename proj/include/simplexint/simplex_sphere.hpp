#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "simplexint/log_magnitude.hpp"

namespace simplexint {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// The n - 1 spherical angles that parametrize a point of the n-bin
/// simplex. Every angle lies in the closed interval [0, pi/2].
class AngleVector {
 public:
  /// Throws std::invalid_argument if empty or any angle is outside [0, pi/2].
  explicit AngleVector(std::vector<double> theta);

  std::size_t bins() const { return theta_.size() + 1; }
  std::size_t size() const { return theta_.size(); }
  std::span<const double> values() const { return theta_; }
  double operator[](std::size_t i) const { return theta_[i]; }

 private:
  std::vector<double> theta_;
};

/// A probability vector: nonnegative components summing to 1 (within 1e-12).
class SimplexPoint {
 public:
  static constexpr double kSumTolerance = 1e-12;

  /// Throws std::invalid_argument if fewer than two components, any
  /// component is negative or non-finite, or the sum is off by more than
  /// kSumTolerance.
  explicit SimplexPoint(std::vector<double> p);

  std::size_t size() const { return p_.size(); }
  std::span<const double> values() const { return p_; }
  double operator[](std::size_t i) const { return p_[i]; }

 private:
  std::vector<double> p_;
};

/// Exponents m_i of the integrand prod_i p_i^m_i. Each m_i must exceed -1
/// so that every Gamma argument m_i + 1 is positive.
class ExponentVector {
 public:
  /// Throws std::invalid_argument if fewer than two entries or any entry is
  /// non-finite or <= -1.
  explicit ExponentVector(std::vector<double> m);

  std::size_t bins() const { return m_.size(); }
  std::span<const double> values() const { return m_; }
  double operator[](std::size_t i) const { return m_[i]; }
  /// N = sum_i m_i.
  double total() const;

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

 private:
  std::vector<double> m_;
};

/// sin and cos of an angle in [0, pi/2], exact at both endpoints.
struct QuarterSinCos {
  double sin;
  double cos;
};
QuarterSinCos quarter_sincos(double theta);

/// p_1 = cos^2 t_1, p_i = (prod_{j<i} sin^2 t_j) cos^2 t_i, p_n = prod sin^2 t_j.
SimplexPoint angles_to_simplex(const AngleVector& angles);

/// Inverse map. Once the remaining mass is exhausted, every later angle is
/// pi/2.
AngleVector simplex_to_angles(const SimplexPoint& point);

/// ln |det d(p_1..p_{n-1}) / d(t_1..t_{n-1})|.
///
/// p_i depends only on t_1..t_i, so the Jacobian matrix is lower triangular
/// and the determinant is the product of the diagonal entries
///   |dp_i/dt_i| = 2 (prod_{j<i} sin^2 t_j) sin t_i cos t_i.
/// Collecting powers of each angle gives
///   ln J = sum_i [ ln(2 sin t_i cos t_i) + 2 (n - 1 - i) ln sin t_i ]
/// with i counted from 1. Zero (negative infinity) on the boundary.
LogMagnitude log_jacobian(const AngleVector& angles);

/// ln K_j(theta) for the separated kernel
///   K_j = 2 cos^(2(m_j+1)-1)(theta) sin^(2 sum_{l>j}(1+m_l) - 1)(theta),
/// whose product over j equals integrand times Jacobian. The index j is
/// 0-based and runs over 0..n-2. Throws std::out_of_range for a bad index
/// and std::invalid_argument for theta outside [0, pi/2].
double log_kernel(std::size_t j, const ExponentVector& m, double theta);

namespace detail {

/// Unvalidated forward map into caller storage: writes p (size n) and
/// ln p (size n) for angles theta (size n - 1). ln p is accumulated as a
/// sum of logarithms and does not underflow with p.
void map_angles(std::span<const double> theta, std::span<double> p,
                std::span<double> log_p);

/// Unvalidated ln J for angles theta.
double log_jacobian(std::span<const double> theta);

/// The contribution of angle number `axis` (0-based, of `axes` angles) to
/// ln J: ln(2 sin t cos t) + 2 (axes - 1 - axis) ln sin t.
double log_jacobian_factor(std::size_t axis, std::size_t axes, double theta);

/// e * ln(x) with the convention 0 * ln(0) = 0.
double scaled_log(double exponent, double log_x);

}  // namespace detail

}  // namespace simplexint
