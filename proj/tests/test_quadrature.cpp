#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "caustic/errors.hpp"
#include "caustic/quadrature.hpp"

using namespace caustic;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(GaussLegendre, SinglePointIsMidpoint) {
  const auto rule = gauss_legendre(1);
  ASSERT_EQ(rule.size(), 1u);
  EXPECT_EQ(rule.nodes[0], 0.0);
  EXPECT_DOUBLE_EQ(rule.weights[0], 2.0);
}

TEST(GaussLegendre, TwoPointsSolveMomentEquations) {
  // w1 + w2 = 2, w1 x1^2 + w2 x2^2 = 2/3 with symmetric nodes: x = 1/sqrt(3), w = 1.
  const double node = std::sqrt(1.0 / 3.0);
  EXPECT_NEAR(node, 0.5773502691896258, 2e-16);
  const auto rule = gauss_legendre(2);
  EXPECT_NEAR(rule.nodes[0], -node, 1e-15);
  EXPECT_NEAR(rule.nodes[1], node, 1e-15);
  EXPECT_NEAR(rule.weights[0], 1.0, 1e-15);
  EXPECT_NEAR(rule.weights[1], 1.0, 1e-15);
  EXPECT_NEAR(rule.apply([](double x) { return x * x; }), 2.0 / 3.0, 1e-15);
}

TEST(GaussLegendre, RejectsOutOfRangeCounts) {
  EXPECT_THROW(gauss_legendre(0), InvalidParameter);
  EXPECT_THROW(gauss_legendre(-3), InvalidParameter);
  EXPECT_THROW(gauss_legendre(kMaxGaussNodes + 1), InvalidParameter);
}

class GaussLegendreProperties : public ::testing::TestWithParam<int> {};

TEST_P(GaussLegendreProperties, WeightsNodesAndEvenMoments) {
  const int n = GetParam();
  const auto rule = gauss_legendre(n);
  double total = 0.0;
  for (double w : rule.weights) {
    EXPECT_GT(w, 0.0);
    total += w;
  }
  EXPECT_NEAR(total, 2.0, 1e-13);
  for (int i = 0; i < n; ++i) {
    EXPECT_EQ(rule.nodes[i], -rule.nodes[n - 1 - i]);
    if (i > 0) EXPECT_LT(rule.nodes[i - 1], rule.nodes[i]);
  }
  for (int j = 0; j <= n - 1 && j <= 400; ++j) {
    const double exact = 2.0 / (2.0 * j + 1.0);
    const double got = rule.apply([j](double x) { return std::pow(x, 2 * j); });
    EXPECT_NEAR(got, exact, 1e-12 * exact) << "n=" << n << " j=" << j;
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, GaussLegendreProperties,
                         ::testing::Values(1, 2, 3, 4, 5, 7, 10, 16, 33, 64, 101, 256, 1000));

TEST(GaussLegendre, LargestRuleIsWellFormed) {
  const auto rule = gauss_legendre(kMaxGaussNodes);
  double total = 0.0;
  for (double w : rule.weights) total += w;
  EXPECT_NEAR(total, 2.0, 1e-13);
  EXPECT_NEAR(rule.apply([](double x) { return std::cos(x); }), 2.0 * std::sin(1.0), 1e-13);
}

TEST(GaussLegendre, CachedRuleMatchesFresh) {
  const auto& cached = cached_gauss_legendre(37);
  const auto fresh = gauss_legendre(37);
  EXPECT_EQ(cached.nodes, fresh.nodes);
  EXPECT_EQ(&cached, &cached_gauss_legendre(37));
}

TEST(Integrate, SineOverHalfPeriod) {
  EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12), 2.0, 1e-12);
}

TEST(Integrate, ArcsineDensityWithBothSqrtFlags) {
  // d/dx arcsin(x) = (1 - x^2)^{-1/2}, so the integral is pi.
  auto f = [](double x) { return 1.0 / std::sqrt((1.0 - x) * (1.0 + x)); };
  EXPECT_NEAR(integrate(f, -1.0, 1.0, 1e-12, EndpointSingularity::sqrt_both),
              3.141592653589793, 1e-12);
}

TEST(Integrate, SingleSidedSqrtSingularity) {
  // int_0^1 x^{-1/2} dx = 2 and int_0^1 (1-x)^{-1/2} cos(x) dx via the flag at b
  EXPECT_NEAR(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-12,
                        EndpointSingularity::sqrt_at_a),
              2.0, 1e-12);
  EXPECT_NEAR(integrate([](double x) { return 1.0 / std::sqrt(1.0 - x); }, 0.0, 1.0, 1e-12,
                        EndpointSingularity::sqrt_at_b),
              2.0, 1e-12);
}

TEST(Integrate, FullLoopOfTheEnergyCurve) {
  // int tau dphi around tau^2 + c^2/sin^2 phi = 1 is 2 pi (1 - c); c = 2/3 gives 2 pi / 3.
  const double c = 2.0 / 3.0;
  const double lo = std::asin(c), hi = kPi - std::asin(c);
  auto tau = [c](double phi) {
    const double s = std::sin(phi);
    return std::sqrt(std::max(0.0, 1.0 - c * c / (s * s)));
  };
  const double loop = 2.0 * integrate(tau, lo, hi, 1e-13, EndpointSingularity::sqrt_both);
  EXPECT_NEAR(loop, 2.0943951023931953, 1e-10);
}

TEST(Integrate, LinearityAndAdditivity) {
  std::mt19937_64 gen(20261018);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  const double tol = 1e-11;
  for (int trial = 0; trial < 25; ++trial) {
    const double a1 = coef(gen), a2 = coef(gen), w = std::abs(coef(gen)) + 0.5;
    const double alpha = coef(gen), beta = coef(gen);
    auto f = [=](double x) { return a1 * x * x + std::sin(w * x); };
    auto g = [=](double x) { return std::exp(a2 * x / 3.0); };
    auto combo = [&](double x) { return alpha * f(x) + beta * g(x); };
    const double lo = -1.0 - std::abs(a1) / 3.0, hi = 1.5 + std::abs(a2) / 3.0;
    const double lhs = integrate(combo, lo, hi, tol);
    const double rhs = alpha * integrate(f, lo, hi, tol) + beta * integrate(g, lo, hi, tol);
    EXPECT_NEAR(lhs, rhs, 2.0 * tol * (1.0 + std::abs(alpha) + std::abs(beta)));

    const double mid = lo + (hi - lo) * (0.2 + 0.6 * std::abs(coef(gen)) / 3.0);
    EXPECT_NEAR(integrate(f, lo, hi, tol), integrate(f, lo, mid, tol) + integrate(f, mid, hi, tol),
                2.0 * tol);
  }
}

TEST(Integrate, NonIntegrableSingularityReportsAccuracyFailure) {
  try {
    integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-10);
    FAIL() << "expected AccuracyFailure";
  } catch (const AccuracyFailure& e) {
    EXPECT_TRUE(std::isfinite(e.estimate()));
    EXPECT_GT(e.error_bound(), 1e-10);
  }
}

TEST(Integrate, RejectsBadArguments) {
  auto f = [](double x) { return x; };
  EXPECT_THROW(integrate(f, 1.0, 1.0, 1e-10), InvalidParameter);
  EXPECT_THROW(integrate(f, 2.0, 1.0, 1e-10), InvalidParameter);
  EXPECT_THROW(integrate(f, 0.0, 1.0, 0.0), InvalidParameter);
}
