#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "../support/oracles.hpp"
#include "simplexint/simplex_sphere.hpp"

using namespace simplexint;
using simplexint::testing::finite_difference_jacobian;
using simplexint::testing::random_interior_angles;

namespace {
constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("domain types validate their invariants") {
  CHECK_THROWS_AS(AngleVector({}), std::invalid_argument);
  CHECK_THROWS_AS(AngleVector({-0.1}), std::invalid_argument);
  CHECK_THROWS_AS(AngleVector({kHalfPi + 1e-12}), std::invalid_argument);
  CHECK_NOTHROW(AngleVector({0.0, kHalfPi}));

  CHECK_THROWS_AS(SimplexPoint({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(SimplexPoint({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(SimplexPoint({1.5, -0.5}), std::invalid_argument);
  CHECK_NOTHROW(SimplexPoint({0.5, 0.5 + 5e-13}));

  CHECK_THROWS_AS(ExponentVector({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ExponentVector({1.0, -1.0}), std::invalid_argument);
  CHECK_NOTHROW(ExponentVector({1.0, -0.999}));
  CHECK(ExponentVector({2.0, 0.0, 1.0}).total() == 3.0);
}

TEST_CASE("angles_to_simplex examples") {
  SUBCASE("all mass in the last bin") {
    const SimplexPoint p = angles_to_simplex(AngleVector({kHalfPi, kHalfPi}));
    CHECK(p[0] == 0.0);
    CHECK(p[1] == 0.0);
    CHECK(p[2] == 1.0);
  }
  SUBCASE("theta_1 = 0 puts all mass in the first bin") {
    for (double t2 : {0.0, 0.3, kHalfPi}) {
      const SimplexPoint p = angles_to_simplex(AngleVector({0.0, t2}));
      CHECK(p[0] == 1.0);
      CHECK(p[1] == 0.0);
      CHECK(p[2] == 0.0);
    }
  }
  SUBCASE("symmetry point") {
    const SimplexPoint p = angles_to_simplex(AngleVector({kQuarterPi, kQuarterPi}));
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p[1] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p[2] == doctest::Approx(0.25).epsilon(1e-15));
  }
}

TEST_CASE("simplex_to_angles examples") {
  SUBCASE("tail convention") {
    const AngleVector a = simplex_to_angles(SimplexPoint({1.0, 0.0, 0.0}));
    CHECK(a[0] == 0.0);
    CHECK(a[1] == kHalfPi);
  }
  SUBCASE("symmetry point") {
    const AngleVector a = simplex_to_angles(SimplexPoint({0.5, 0.25, 0.25}));
    CHECK(a[0] == doctest::Approx(kQuarterPi).epsilon(1e-15));
    CHECK(a[1] == doctest::Approx(kQuarterPi).epsilon(1e-15));
  }
  SUBCASE("residual mass ratios") {
    const AngleVector a = simplex_to_angles(SimplexPoint({0.2, 0.3, 0.5}));
    CHECK(std::pow(std::cos(a[0]), 2) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(std::pow(std::cos(a[1]), 2) == doctest::Approx(0.375).epsilon(1e-14));
  }
  SUBCASE("exhausted mass in the middle") {
    const AngleVector a = simplex_to_angles(SimplexPoint({0.4, 0.6, 0.0, 0.0}));
    CHECK(a[2] == kHalfPi);
    const SimplexPoint back = angles_to_simplex(a);
    CHECK(back[0] == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(back[1] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(back[2] == 0.0);
    CHECK(back[3] == 0.0);
  }
}

TEST_CASE("forward map is normalized and round-trips on the open cube") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {2u, 3u, 4u, 7u, 16u, 40u}) {
    for (int trial = 0; trial < 500; ++trial) {
      const AngleVector a(random_interior_angles(rng, n));
      const SimplexPoint p = angles_to_simplex(a);
      const double sum = std::accumulate(p.values().begin(), p.values().end(), 0.0);
      CHECK(std::abs(sum - 1.0) <= 1e-14);
      const AngleVector back = simplex_to_angles(p);
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(back[i] - a[i]) <= 1e-12);
    }
  }
}

TEST_CASE("log_jacobian examples") {
  CHECK(log_jacobian(AngleVector({kQuarterPi, kQuarterPi})).log_value() ==
        doctest::Approx(std::log(0.5)).epsilon(1e-15));
  CHECK(log_jacobian(AngleVector({0.0, kQuarterPi})).log_value() == -kInf);
  CHECK(log_jacobian(AngleVector({kQuarterPi, kHalfPi})).is_zero());
  // n = 4 at the symmetry point: finite differences and a 40-digit numerical
  // differentiation both give |det| = 1/8.
  const std::vector<double> theta(3, kQuarterPi);
  const double lj = log_jacobian(AngleVector(theta)).log_value();
  CHECK(lj == doctest::Approx(std::log(0.125)).epsilon(1e-15));
  CHECK(std::abs(std::exp(lj) - finite_difference_jacobian(theta)) <= 1e-8);
}

TEST_CASE("n = 3 Jacobian matches the hand-differentiated 2x2 determinant") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto t = random_interior_angles(rng, 3);
    // |dp1/dt1 * dp2/dt2| with p1 = cos^2 t1, p2 = sin^2 t1 cos^2 t2.
    const double d11 = -2.0 * std::cos(t[0]) * std::sin(t[0]);
    const double d22 = -2.0 * std::pow(std::sin(t[0]), 2) * std::sin(t[1]) * std::cos(t[1]);
    const double expected = (2.0 * std::cos(t[0]) * std::pow(std::sin(t[0]), 3)) *
                            (2.0 * std::sin(t[1]) * std::cos(t[1]));
    CHECK(std::abs(d11 * d22) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(std::exp(log_jacobian(AngleVector(t)).log_value()) ==
          doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("log_jacobian agrees with finite-difference determinants") {
  std::mt19937_64 rng(5);
  for (std::size_t n : {3u, 4u, 5u}) {
    for (int i = 0; i < 50; ++i) {
      const auto theta = random_interior_angles(rng, n);
      const double fd = finite_difference_jacobian(theta);
      const double lj = log_jacobian(AngleVector(theta)).log_value();
      CHECK(std::abs(lj - std::log(fd)) <= 1e-6);
    }
  }
}

TEST_CASE("log_kernel examples") {
  const ExponentVector zero3({0.0, 0.0, 0.0});
  CHECK(std::exp(log_kernel(0, zero3, kQuarterPi)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::exp(log_kernel(1, zero3, kQuarterPi)) == doctest::Approx(1.0).epsilon(1e-15));
  // n = 4, m = (1,2,3,4), second kernel: 2 cos^5 sin^17 at 0.7 (mpmath, 40 digits).
  CHECK(log_kernel(1, ExponentVector({1, 2, 3, 4}), 0.7) ==
        doctest::Approx(-8.1224975749559975281).epsilon(1e-15));
  CHECK(log_kernel(0, zero3, 0.0) == -kInf);
  CHECK_THROWS_AS(log_kernel(2, zero3, 0.3), std::out_of_range);
  CHECK_THROWS_AS(log_kernel(0, zero3, 2.0), std::invalid_argument);
  // A cos exponent of 2(m+1)-1 < 0 diverges at pi/2.
  CHECK(log_kernel(0, ExponentVector({-0.75, 0.0}), kHalfPi) == kInf);
}

TEST_CASE("integrand times Jacobian factorizes into the kernels") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> exponent(-0.9, 12.0);
  for (std::size_t n : {2u, 3u, 4u, 5u, 6u, 8u, 12u}) {
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<double> mv(n);
      for (auto& v : mv) v = exponent(rng);
      const ExponentVector m(mv);
      const AngleVector a(random_interior_angles(rng, n));
      const SimplexPoint p = angles_to_simplex(a);
      double lhs = log_jacobian(a).log_value();
      for (std::size_t i = 0; i < n; ++i) lhs += m[i] * std::log(p[i]);
      double rhs = 0.0;
      for (std::size_t j = 0; j + 1 < n; ++j) rhs += log_kernel(j, m, a[j]);
      CHECK(std::abs(std::expm1(lhs - rhs)) <= 1e-11);
    }
  }
}
