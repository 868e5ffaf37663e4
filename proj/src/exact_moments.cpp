#include "simplexint/exact_moments.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "simplexint/special_fn.hpp"

namespace simplexint {
namespace {

void check_bin(const ExponentVector& m, std::size_t i) {
  if (i >= m.bins()) {
    throw std::out_of_range("bin index " + std::to_string(i) + " out of range for " +
                            std::to_string(m.bins()) + " bins");
  }
}

// Sum of Gamma arguments, sum_i (m_i + 1) = N + n.
double gamma_total(const ExponentVector& m) {
  return m.total() + static_cast<double>(m.bins());
}

}  // namespace

MomentIndex::MomentIndex(std::vector<double> orders) : a_(std::move(orders)) {
  for (double v : a_) {
    if (!std::isfinite(v)) throw std::invalid_argument("moment orders must be finite");
  }
}

MomentIndex MomentIndex::unit(std::size_t bins, std::size_t bin, double order) {
  if (bin >= bins) throw std::out_of_range("moment bin out of range");
  std::vector<double> a(bins, 0.0);
  a[bin] = order;
  return MomentIndex(std::move(a));
}

MomentIndex MomentIndex::zeros(std::size_t bins) {
  return MomentIndex(std::vector<double>(bins, 0.0));
}

MomentIndex operator+(const MomentIndex& lhs, const MomentIndex& rhs) {
  if (lhs.size() != rhs.size()) throw std::invalid_argument("moment index sizes differ");
  std::vector<double> a(lhs.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = lhs[i] + rhs[i];
  return MomentIndex(std::move(a));
}

ExponentVector shifted(const ExponentVector& m, const MomentIndex& a) {
  if (a.size() != m.bins()) {
    throw std::invalid_argument("moment index has " + std::to_string(a.size()) +
                                " entries, expected " + std::to_string(m.bins()));
  }
  std::vector<double> out(m.bins());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = m[i] + a[i];
  return ExponentVector(std::move(out));
}

LogMagnitude log_normalizer(const ExponentVector& m) {
  double acc = 0.0;
  for (double mi : m.values()) acc += log_gamma(mi + 1.0);
  return LogMagnitude::from_log(acc - log_gamma(gamma_total(m)));
}

double moment(const ExponentVector& m, const MomentIndex& a) {
  shifted(m, a);  // validates sizes and m + a > -1
  double log_ratio = 0.0;
  double order = 0.0;
  for (std::size_t i = 0; i < m.bins(); ++i) {
    log_ratio += log_gamma_ratio(m[i] + 1.0, a[i]);
    order += a[i];
  }
  log_ratio -= log_gamma_ratio(gamma_total(m), order);
  return std::exp(log_ratio);
}

double mean(const ExponentVector& m, std::size_t i) {
  check_bin(m, i);
  return (m[i] + 1.0) / gamma_total(m);
}

double second_moment(const ExponentVector& m, std::size_t i) {
  check_bin(m, i);
  const double t = gamma_total(m);
  return ((m[i] + 2.0) * (m[i] + 1.0)) / ((t + 1.0) * t);
}

double variance(const ExponentVector& m, std::size_t i) {
  check_bin(m, i);
  const double t = gamma_total(m);
  return ((m[i] + 1.0) * (t - m[i] - 1.0)) / ((t * t) * (t + 1.0));
}

double std_dev(const ExponentVector& m, std::size_t i) { return std::sqrt(variance(m, i)); }

double skewness(const ExponentVector& m, std::size_t i) {
  check_bin(m, i);
  const std::size_t n = m.bins();
  const double r1 = moment(m, MomentIndex::unit(n, i, 1.0));
  const double r2 = moment(m, MomentIndex::unit(n, i, 2.0));
  const double r3 = moment(m, MomentIndex::unit(n, i, 3.0));
  const double mu3 = r3 - 3.0 * r2 * r1 + 2.0 * r1 * r1 * r1;
  const double var = variance(m, i);
  return mu3 / (var * std::sqrt(var));
}

double covariance(const ExponentVector& m, std::size_t i, std::size_t j) {
  check_bin(m, i);
  check_bin(m, j);
  const std::size_t n = m.bins();
  const double joint = moment(m, MomentIndex::unit(n, i) + MomentIndex::unit(n, j));
  return joint - mean(m, i) * mean(m, j);
}

}  // namespace simplexint
