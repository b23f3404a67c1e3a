#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "caustic/errors.hpp"
#include "caustic/legendre.hpp"
#include "caustic/semiclassics.hpp"
#include "caustic/specfun.hpp"

using namespace caustic;

namespace {

constexpr double kPi = std::numbers::pi;
const double kC = 2.0 / 3.0;

// Plain trapezoid on the raw integrand; the sqrt zero at phi+ limits it to O(n^{-3/2}).
double action_trapezoid(double c, double phi, long panels) {
  const double hi = kPi - std::asin(c);
  const double dx = (hi - phi) / panels;
  auto f = [c](double psi) {
    const double s = std::sin(psi);
    return std::sqrt(std::max(0.0, 1.0 - c * c / (s * s)));
  };
  double sum = 0.5 * (f(phi) + f(hi));
  for (long i = 1; i < panels; ++i) sum += f(phi + i * dx);
  return sum * dx;
}

double mode(const LadderMember& mem, double phi) { return mode_u(mem, phi).value(); }

}  // namespace

TEST(TurningPoints, TwoThirds) {
  const auto tp = turning_points(kC);
  EXPECT_NEAR(tp.phi_minus, 0.7297276562269663, 1e-15);
  EXPECT_NEAR(tp.phi_plus, 2.4118649973628270, 1e-15);
  EXPECT_NEAR(tp.phi_minus, std::asin(kC), 1e-16);
}

TEST(TurningPoints, SineEqualsCAndReflectionSymmetry) {
  for (double c : {1e-6, 0.1, 0.4, kC, 0.8, 0.999999}) {
    const auto tp = turning_points(c);
    EXPECT_NEAR(std::sin(tp.phi_minus), c, 1e-15);
    EXPECT_NEAR(std::sin(tp.phi_plus), c, 1e-15);
    EXPECT_DOUBLE_EQ(tp.phi_minus + tp.phi_plus, kPi);
  }
  const auto eq = turning_points(1.0 - 1e-12);
  EXPECT_NEAR(eq.phi_minus, kPi / 2, 2e-6);
  EXPECT_NEAR(eq.phi_plus, kPi / 2, 2e-6);
}

TEST(TurningPoints, RejectsOutsideUnitInterval) {
  for (double c : {0.0, 1.0, -0.3, 1.5, std::nan("")}) {
    EXPECT_THROW(turning_points(c), DomainError) << c;
    EXPECT_THROW(LadderGeometry{c}, DomainError) << c;
  }
}

TEST(Geometry, GapAndSlope) {
  const LadderGeometry g(kC);
  for (double phi : {0.8, 1.3, 2.0, 2.41}) {
    const double s = std::sin(phi);
    EXPECT_NEAR(g.gap(phi), s * s - kC * kC, 1e-15);
  }
  EXPECT_EQ(g.gap(g.phi_plus()), 0.0);
  EXPECT_NEAR(g.potential_slope_at_caustic(), 2.0 * std::sqrt(5.0) / 3.0 / kC, 1e-15);
  EXPECT_TRUE(g.allowed(kPi / 2));
  EXPECT_FALSE(g.allowed(0.5));
}

TEST(Action, EndpointsAndLoopIdentity) {
  for (double c : {2.0 / 5.0, kC, 4.0 / 5.0}) {
    const LadderGeometry g(c);
    EXPECT_EQ(action(g, g.phi_plus()), 0.0);
    EXPECT_NEAR(2.0 * action(g, g.phi_minus()), 2.0 * kPi * (1.0 - c), 1e-10) << c;
  }
  EXPECT_NEAR(action(LadderGeometry(kC), LadderGeometry(kC).phi_minus()), 1.0471975511965976,
              1e-11);
}

TEST(Action, MatchesBruteForceTrapezoid) {
  const LadderGeometry g(kC);
  const double oracle = action_trapezoid(kC, kPi / 2, 1000000);
  EXPECT_NEAR(action(g, kPi / 2), oracle, 1e-9);
}

TEST(Action, DomainChecks) {
  const LadderGeometry g(kC);
  EXPECT_THROW(action(g, 0.5), DomainError);
  EXPECT_THROW(action(g, 2.5), DomainError);
  EXPECT_THROW(airy_arg_rho(g, 2.5), DomainError);
}

TEST(AiryArgument, VanishesAtCausticAndMatchesAction) {
  const LadderGeometry g(kC);
  EXPECT_EQ(airy_arg_rho(g, g.phi_plus()), 0.0);
  for (double phi : {0.9, 1.2, kPi / 2, 2.0, 2.3, 2.41}) {
    const double rho = airy_arg_rho(g, phi);
    EXPECT_NEAR(2.0 / 3.0 * std::pow(rho, 1.5), action(g, phi), 1e-10) << phi;
    // two-sided coefficient variant: (3/4) rho^{3/2} = 2 A
    const double lit = airy_arg_rho(g, phi, AiryArgument::theorem_literal);
    EXPECT_NEAR(0.375 * std::pow(lit, 1.5), action(g, phi), 1e-10) << phi;
  }
}

TEST(AiryArgument, SlopeAtTheCaustic) {
  const LadderGeometry g(kC);
  const double expected = std::cbrt(std::sqrt(5.0));
  EXPECT_NEAR(expected, 1.3077, 1e-4);
  EXPECT_NEAR(std::cbrt(g.potential_slope_at_caustic()), expected, 1e-14);
  // difference quotient with one Richardson step removes the O(d) term
  const double d = 1e-5;
  const double q1 = airy_arg_rho(g, g.phi_plus() - d) / d;
  const double q2 = airy_arg_rho(g, g.phi_plus() - d / 2) / (d / 2);
  EXPECT_NEAR(2.0 * q2 - q1, expected, 1e-6);
}

TEST(AiryArgument, MonotoneApproachToCaustic) {
  const LadderGeometry g(kC);
  double prev_a = std::numeric_limits<double>::infinity(), prev_r = prev_a;
  for (int i = 1; i <= 400; ++i) {
    const double phi = g.phi_minus() + (g.phi_plus() - g.phi_minus()) * (1.0 - std::pow(0.97, i));
    const double a = action(g, phi), r = airy_arg_rho(g, phi);
    EXPECT_LT(a, prev_a);
    EXPECT_LT(r, prev_r);
    EXPECT_GE(a, 0.0);
    prev_a = a;
    prev_r = r;
  }
}

TEST(CausticRatio, LimitAndContinuity) {
  const LadderGeometry g(kC);
  const double limit = std::pow(2.0 / kC, 4.0 / 3.0) * std::pow(1.0 - kC * kC, -1.0 / 3.0);
  EXPECT_NEAR(limit, 5.2632319287831573, 1e-13);
  EXPECT_NEAR(caustic_ratio(g, g.phi_plus()), limit, 1e-14);
  // direct quotient just outside the switch distance approaches the limit at O(distance)
  const double just_out = caustic_ratio(g, g.phi_plus() - 2.0 * kCausticLimitDistance);
  EXPECT_NEAR(just_out, limit, 1e-3 * limit);
  const double far = caustic_ratio(g, g.phi_plus() - 1e-2);
  EXPECT_GT(std::abs(far - limit), std::abs(just_out - limit));
}

TEST(WkbLeading, EnvelopeAtEquator) {
  const LadderGeometry g(kC);
  const double env = std::sqrt(2.0 / kPi) * std::pow(5.0 / 9.0, -0.25);
  EXPECT_NEAR(env, 0.9242, 1e-4);
  EXPECT_NEAR(wkb_envelope(g, kPi / 2), env, 1e-14);
}

TEST(WkbLeading, LiteralDisplayOddCaseAtEquator) {
  const Ladder ladder(1, 1);
  const LadderGeometry g(ladder);
  const auto mem = ladder_member(ladder, 255);
  ASSERT_EQ((mem.N - mem.m) % 2, 1);
  const double expected = std::sqrt(2.0 / kPi) * std::pow(1.0 - kC * kC, -0.25) *
                          std::cos(action(g, kPi / 2) / mem.h + kPi / 4);
  EXPECT_NEAR(wkb_leading(mem, g, kPi / 2, WkbPhase::literal), expected, 1e-9);
  // The mode is odd about the equator here, so only the consistent phase tracks it.
  EXPECT_NEAR(mode(mem, kPi / 2), 0.0, 1e-12);
  EXPECT_NEAR(wkb_leading(mem, g, kPi / 2), 0.0, 1e-9);
  EXPECT_GT(std::abs(expected), 0.5);
}

TEST(WkbLeading, ErrorShrinksAlongTheLadder) {
  const Ladder ladder(1, 1);
  const LadderGeometry g(ladder);
  double prev = std::numeric_limits<double>::infinity();
  for (long k : {31L, 63L, 127L, 255L}) {
    const auto mem = ladder_member(ladder, k);
    const double sign = (mem.N - mem.m) % 2 == 0 ? 1.0 : -1.0;
    const double err = std::abs(wkb_leading(mem, g, 1.8) - sign * mode(mem, 1.8));
    EXPECT_LT(err, prev) << k;
    EXPECT_LT(err, 3.0 * mem.h) << k;
    prev = err;
  }
}

TEST(WkbLeading, ProximityAndDomain) {
  const LadderGeometry g(kC);
  const auto mem = ladder_member(Ladder(1, 1), 10);
  EXPECT_THROW(wkb_leading(mem, g, g.phi_plus() - 0.01), ProximityError);
  EXPECT_THROW(wkb_leading(mem, g, g.phi_minus() + 0.049), ProximityError);
  EXPECT_THROW(wkb_leading(mem, g, 0.3), DomainError);
  EXPECT_NO_THROW(wkb_leading(mem, g, g.phi_plus() - 0.051));
}

TEST(AiryLeading, ValueAtCaustic) {
  const Ladder ladder(1, 1);
  const LadderGeometry g(ladder);
  const auto mem = ladder_member(ladder, 63);
  const double limit = std::pow(2.0 / kC, 4.0 / 3.0) * std::pow(1.0 - kC * kC, -1.0 / 3.0);
  const double expected =
      std::sqrt(kC) * std::pow(mem.h, -1.0 / 6.0) * std::pow(limit, 0.25) * airy(0.0).ai;
  EXPECT_NEAR(airy_leading(mem, g, g.phi_plus()), expected, 1e-13 * expected);
}

TEST(AiryLeading, MatchesWkbAtLargeArgument) {
  const Ladder ladder(1, 1);
  const LadderGeometry g(ladder);
  for (long k : {63L, 255L}) {
    const auto mem = ladder_member(ladder, k);
    // solve h^{-2/3} rho(phi) = 10 by bisection
    double lo = g.phi_plus() - kAiryWindow + 1e-9, hi = g.phi_plus();
    for (int i = 0; i < 100; ++i) {
      const double mid = 0.5 * (lo + hi);
      (std::pow(mem.h, -2.0 / 3.0) * airy_arg_rho(g, mid) > 10.0 ? lo : hi) = mid;
    }
    const double phi = 0.5 * (lo + hi);
    if (g.phi_plus() - phi < kWkbExclusion) continue;
    const double gap = std::abs(airy_leading(mem, g, phi) - wkb_leading(mem, g, phi)) /
                       wkb_envelope(g, phi);
    EXPECT_LE(gap, std::cbrt(mem.h)) << k;
  }
}

TEST(AiryLeading, FiniteAcrossTheWindowAndDomainChecked) {
  const LadderGeometry g(kC);
  const auto mem = ladder_member(Ladder(1, 1), 1000);
  for (int i = 0; i < 300; ++i) {
    const double phi = g.phi_plus() - 0.299 * i / 299.0;
    EXPECT_TRUE(std::isfinite(airy_leading(mem, g, phi))) << phi;
  }
  EXPECT_THROW(airy_leading(mem, g, g.phi_plus() - 0.31), DomainError);
  EXPECT_THROW(airy_leading(mem, g, g.phi_plus() + 1e-6), DomainError);
}

TEST(Matching, ConsistentArgumentConvergesAndLiteralDoesNot) {
  const Ladder ladder(1, 1);
  const LadderGeometry g(ladder);
  std::vector<double> phis;
  for (int i = 0; i <= 7; ++i) phis.push_back(g.phi_plus() - 0.15 - 0.14 * i / 7.0);
  std::vector<std::pair<double, double>> good, bad;
  for (long k : {31L, 63L, 127L, 255L}) {
    const auto mem = ladder_member(ladder, k);
    good.emplace_back(mem.h, wkb_airy_matching_gap(mem, g, phis));
    bad.emplace_back(mem.h, wkb_airy_matching_gap(mem, g, phis, AiryArgument::theorem_literal));
  }
  EXPECT_GE(fit_order(good), 0.2);
  EXPECT_LT(fit_order(bad), 0.2);
  EXPECT_GT(bad.back().second, 0.5);
}

TEST(CausticScan, EmptyGridAndSingleMember) {
  const Ladder ladder(1, 1);
  const std::vector<long> ks = {31, 63, 127};
  const auto empty = caustic_scan(ladder, ks, std::vector<double>{});
  EXPECT_TRUE(empty.rows.empty());
  EXPECT_FALSE(empty.fitted_order_wkb.has_value());
  EXPECT_FALSE(empty.fitted_order_airy.has_value());

  const std::vector<long> one = {63};
  const auto single = caustic_scan(ladder, one, CausticGrid{4});
  EXPECT_EQ(single.rows.size(), 4u);
  EXPECT_FALSE(single.fitted_order_airy.has_value());
  EXPECT_FALSE(single.fitted_order_wkb.has_value());
}

TEST(CausticScan, WkbOrderAtFixedLatitude) {
  const Ladder ladder(1, 1);
  const std::vector<long> ks = {31, 63, 127, 255};
  const auto table = caustic_scan(ladder, ks, std::vector<double>{1.9});
  ASSERT_TRUE(table.fitted_order_wkb.has_value());
  EXPECT_GE(*table.fitted_order_wkb, 0.8);
  EXPECT_LE(*table.fitted_order_wkb, 1.3);
  EXPECT_DOUBLE_EQ(table.c, kC);
  for (const auto& m : table.members) {
    EXPECT_TRUE(m.sign_consistent_wkb);
    EXPECT_NE(m.sign_wkb, 0);
  }
}

TEST(CausticScan, RowsAreOrderedAndErrorsConsistent) {
  const Ladder ladder(1, 1);
  const std::vector<long> ks = {31, 63, 127, 255};
  const auto table = caustic_scan(ladder, ks, CausticGrid{4});
  ASSERT_EQ(table.rows.size(), 16u);
  ASSERT_TRUE(table.fitted_order_airy.has_value());
  EXPECT_GE(*table.fitted_order_airy, 0.2);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    if (i > 0) {
      const auto& p = table.rows[i - 1];
      EXPECT_TRUE(p.k < r.k || (p.k == r.k && p.phi < r.phi));
    }
    const auto& mem = *std::find_if(table.members.begin(), table.members.end(),
                                    [&](const MemberSummary& s) { return s.k == r.k; });
    EXPECT_NEAR(r.err_airy, std::abs(r.airy - mem.sign_airy * r.exact), 1e-15);
    if (std::isnan(r.wkb)) EXPECT_TRUE(std::isnan(r.err_wkb));
  }
}

TEST(CausticScan, RejectsBadInput) {
  const Ladder ladder(1, 1);
  const std::vector<long> unsorted = {63, 31};
  EXPECT_THROW(caustic_scan(ladder, unsorted, std::vector<double>{1.9}), InvalidParameter);
  const std::vector<long> ks = {31};
  EXPECT_THROW(caustic_scan(ladder, ks, std::vector<double>{0.5}), DomainError);
}

TEST(FitOrder, Examples) {
  std::vector<std::pair<double, double>> pairs;
  for (double h : {1e-1, 1e-2, 1e-3, 1e-4}) pairs.emplace_back(h, h);
  EXPECT_NEAR(fit_order(pairs), 1.0, 1e-12);
  pairs.clear();
  for (double h : {1e-1, 1e-2, 1e-3, 1e-4}) pairs.emplace_back(h, std::cbrt(h));
  EXPECT_NEAR(fit_order(pairs), 1.0 / 3.0, 1e-12);
  pairs.clear();
  for (double h : {1e-2, 1e-3, 1e-4}) pairs.emplace_back(h, 3.0 * h + h * h);
  const double slope = fit_order(pairs);
  EXPECT_GE(slope, 0.99);
  EXPECT_LE(slope, 1.01);
}

TEST(FitOrder, InvalidData) {
  std::vector<std::pair<double, double>> two = {{0.1, 0.1}, {0.01, 0.01}};
  EXPECT_THROW(fit_order(two), InvalidData);
  std::vector<std::pair<double, double>> zero = {{0.1, 0.1}, {0.01, 0.0}, {0.001, 0.001}};
  EXPECT_THROW(fit_order(zero), InvalidData);
  std::vector<std::pair<double, double>> unsorted = {{0.1, 0.1}, {0.2, 0.2}, {0.001, 0.001}};
  EXPECT_THROW(fit_order(unsorted), InvalidData);
}

TEST(Peak, GrowsLikeSixthRootOfDegree) {
  const Ladder ladder(1, 1);
  const LadderGeometry g(ladder);
  std::vector<std::pair<double, double>> pairs;
  for (long k : {31L, 63L, 127L, 255L}) {
    const auto mem = ladder_member(ladder, k);
    pairs.emplace_back(mem.h, caustic_peak(mem, g));
  }
  // peak ~ h^{-1/6}, so the fitted slope against h is about -1/6
  const double exponent = -fit_order(pairs);
  EXPECT_GE(exponent, 0.13);
  EXPECT_LE(exponent, 0.20);
}

TEST(ForbiddenRegion, DecaysFasterThanAnyLowPower) {
  const Ladder ladder(1, 1);
  const double phi = std::asin(kC - 0.1);
  double prev_val = 0.0, prev_h = 0.0;
  for (long k : {31L, 63L, 127L, 255L}) {
    const auto mem = ladder_member(ladder, k);
    const double val = std::abs(mode_u(mem, phi).log10_abs());
    if (prev_h > 0.0) {
      // log10 |u| drops by more than what h^3 would allow between members
      EXPECT_GT(val - prev_val, 3.0 * std::log10(prev_h / mem.h)) << k;
    }
    prev_val = val;
    prev_h = mem.h;
  }
}
