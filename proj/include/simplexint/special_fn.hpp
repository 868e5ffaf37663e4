#pragma once

#include <cstdint>

namespace simplexint {

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b), for a, b > 0.
double log_beta(double a, double b);

/// ln(k!). Values for k <= 20 come from the exact integer factorial.
double log_factorial(std::uint64_t k);

/// ln [Gamma(x + shift) / Gamma(x)] for x > 0 and x + shift > 0.
///
/// Equal to log_gamma(x + shift) - log_gamma(x), but evaluated without
/// the cancellation that difference suffers when x is large: small integer
/// shifts use the rising factorial, large arguments use the difference of
/// Stirling series.
double log_gamma_ratio(double x, double shift);

}  // namespace simplexint
