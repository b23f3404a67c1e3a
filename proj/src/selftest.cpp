#include "caustic/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "caustic/legendre.hpp"
#include "caustic/measures.hpp"
#include "caustic/quadrature.hpp"
#include "caustic/semiclassics.hpp"
#include "caustic/specfun.hpp"

namespace caustic {

namespace {

constexpr double kPi = std::numbers::pi;

CheckResult at_most(std::string name, double value, double bound) {
  return {std::move(name), value <= bound, value, bound, "<="};
}

CheckResult at_least(std::string name, double value, double bound) {
  return {std::move(name), value >= bound, value, bound, ">="};
}

double log_slope(const std::vector<double>& hs, const std::vector<double>& ys) {
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < hs.size(); ++i) pairs.emplace_back(hs[i], ys[i]);
  return fit_order(pairs);
}

// Largest deviation of the quadrature Gram matrix from the identity.
double gram_defect(long N, double b_scale, bool cross) {
  const auto rule = gauss_legendre(static_cast<int>(N) + 2);
  double worst = 0.0;
  for (long m : {0L, N / 2, N}) {
    auto p = [&](long deg, double x) {
      return detail::legendre_assoc_norm_impl(deg, m, x, b_scale).value();
    };
    const double norm = rule.apply([&](double x) { return p(N, x) * p(N, x); });
    worst = std::max(worst, std::abs(norm - 1.0));
    if (cross && N - 1 >= m) {
      const double off = rule.apply([&](double x) { return p(N, x) * p(N - 1, x); });
      worst = std::max(worst, std::abs(off));
    }
  }
  return worst;
}

bool decreasing_with_one_exception(const std::vector<double>& v) {
  int violations = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1]) ++violations;
  return violations <= 1 && v.back() < v.front();
}

}  // namespace

std::vector<CheckResult> run_selftest(const SelftestOptions& options) {
  std::vector<CheckResult> out;
  const double b_scale = options.inject_recurrence_fault ? 1.0 + 1e-3 : 1.0;

  // Loop action 2 A(phi-) = 2 pi (1 - c).
  double loop = 0.0;
  for (double c : {2.0 / 5.0, 2.0 / 3.0, 4.0 / 5.0}) {
    const LadderGeometry g(c);
    loop = std::max(loop, std::abs(2.0 * action(g, g.phi_minus()) - 2.0 * kPi * (1.0 - c)));
  }
  out.push_back(at_most("loop_action", loop, 1e-10));

  // Legendre engine.
  double ortho = 0.0;
  for (long N : {5L, 50L}) ortho = std::max(ortho, gram_defect(N, b_scale, true));
  out.push_back(at_most("orthonormality", ortho, 1e-8));

  double parity = 0.0;
  bool positive = true;
  for (long N : {5L, 50L, 200L}) {
    for (long m : {0L, N / 2, N}) {
      for (double x : {0.1, 0.45, 0.8}) {
        const double a = legendre_assoc_norm(N, m, x).value();
        const double b = legendre_assoc_norm(N, m, -x).value();
        const double sign = ((N + m) % 2 == 0) ? 1.0 : -1.0;
        parity = std::max(parity, std::abs(b - sign * a) / std::max(std::abs(a), 1e-300));
      }
      positive = positive && legendre_assoc_norm(N, m, 1.0 - 1e-6).sign() > 0;
    }
  }
  out.push_back(at_most("parity", parity, 1e-12));
  out.push_back({"positive_near_one", positive, positive ? 1.0 : 0.0, 1.0, "=="});

  out.push_back(at_most("ode_residual", ode_residual(50, 20, 0.3, 1e-4).residual, 1e-5));
  {
    // Steps where truncation dominates the recurrence rounding.
    const double coarse = ode_residual(50, 20, 0.3, 2e-3).residual;
    const double fine = ode_residual(50, 20, 0.3, 1e-3).residual;
    out.push_back(at_least("ode_richardson_order", std::log2(coarse / fine), 3.5));
  }

  // Addition theorem and the two characteristic-function routes.
  {
    const long N = 100;
    const double phi = 1.1;
    double sum = 0.0;
    for (long m = -N; m <= N; ++m) sum += sph_harm_sq(N, m, phi);
    const double target = (2.0 * N + 1.0) / (4.0 * kPi);
    out.push_back(at_most("addition_theorem_sum", std::abs(sum - target) / target, 1e-9));
  }
  {
    const auto mu = empirical_measure(200, 0.8);
    double gap = 0.0;
    for (double s : {1.0, 5.0, 20.0})
      gap = std::max(gap, std::abs(char_fn_direct(mu, s).real() - char_fn_addition(200, 0.8, s)));
    out.push_back(at_most("char_fn_routes", gap, 1e-9));
  }

  // Semiclassical comparisons along the c = 2/3 ladder.
  const Ladder ladder(1, 1);
  const LadderGeometry geom(ladder);
  const std::vector<long> ks = {31, 63, 127, 255};
  {
    const auto table = caustic_scan(ladder, ks, std::vector<double>{1.9});
    const double order = table.fitted_order_wkb.value_or(0.0);
    out.push_back({"wkb_order", order >= 0.8 && order <= 1.3, order, 1.3, "in [0.8, 1.3]"});
  }
  {
    const auto table = caustic_scan(ladder, ks, CausticGrid{4});
    const auto& last = table.members.back();
    out.push_back(at_most("airy_relative_error", last.max_err_airy / last.max_exact_airy, 0.15));
    out.push_back(at_least("airy_order", table.fitted_order_airy.value_or(0.0), 0.2));
  }
  {
    std::vector<double> phis;
    for (int i = 0; i < 8; ++i) phis.push_back(geom.phi_plus() - 0.15 - 0.14 * i / 7.0);
    std::vector<double> hs, gaps, gaps_literal;
    for (long k : ks) {
      const auto member = ladder_member(ladder, k);
      hs.push_back(member.h);
      gaps.push_back(wkb_airy_matching_gap(member, geom, phis));
      gaps_literal.push_back(
          wkb_airy_matching_gap(member, geom, phis, AiryArgument::theorem_literal));
    }
    out.push_back(at_least("matching_order", log_slope(hs, gaps), 0.2));
    out.push_back(at_most("matching_literal_order", log_slope(hs, gaps_literal), 0.2));
  }
  {
    std::vector<double> inv_h, peaks;
    for (long k : ks) {
      const auto member = ladder_member(ladder, k);
      inv_h.push_back(1.0 / member.h);
      peaks.push_back(caustic_peak(member, geom));
    }
    // slope of log peak vs log(1/h) is minus the slope against log h
    std::vector<double> hs;
    for (double v : inv_h) hs.push_back(1.0 / v);
    const double exponent = -log_slope(hs, peaks);
    out.push_back({"peak_exponent", exponent >= 0.13 && exponent <= 0.20, exponent, 0.20,
                   "in [0.13, 0.20]"});
  }
  {
    const double phi = std::asin(geom.c() - 0.1);
    bool fast = true;
    double worst_ratio = 0.0;
    for (std::size_t i = 1; i < ks.size(); ++i) {
      const auto a = ladder_member(ladder, ks[i - 1]);
      const auto b = ladder_member(ladder, ks[i]);
      const double decay = std::pow(10.0, mode_u(b, phi).log10_abs() - mode_u(a, phi).log10_abs());
      const double ratio = decay / std::pow(b.h / a.h, 3.0);
      worst_ratio = std::max(worst_ratio, ratio);
      fast = fast && ratio < 1.0;
    }
    out.push_back({"forbidden_decay", fast, worst_ratio, 1.0, "<"});
  }

  // Weak limit at reduced sizes.
  {
    const double c0 = 0.8;
    const std::vector<long> Ns = {250, 500, 1000};
    double final_gap = 0.0;
    bool trend = true;
    const std::vector<std::function<double(double)>> fs = {
        [](double) { return 1.0; }, [](double t) { return t * t; },
        [](double t) { return t * t * t * t; }, [](double t) { return std::cos(3.0 * t); }};
    std::vector<std::vector<double>> gaps(fs.size());
    for (long N : Ns) {
      const auto mu = empirical_measure(N, c0);
      for (std::size_t i = 0; i < fs.size(); ++i)
        gaps[i].push_back(std::abs(integrate_against(mu, fs[i]) - arcsine_limit(c0, fs[i])));
    }
    for (std::size_t i = 1; i < fs.size(); ++i) {
      trend = trend && decreasing_with_one_exception(gaps[i]);
      final_gap = std::max(final_gap, gaps[i].back());
    }
    final_gap = std::max(final_gap, gaps[0].back());
    out.push_back(at_most("weak_limit_gap", final_gap, 0.05));
    out.push_back({"weak_limit_trend", trend, trend ? 1.0 : 0.0, 1.0, "=="});
    const auto mu = empirical_measure(1000, c0);
    out.push_back(at_most("support_concentration", mu.mass_outside(c0 + 0.1), 1e-6));
  }
  {
    double gap = 0.0;
    for (double z : {1.0, 5.0, 10.0}) gap = std::max(gap, mehler_heine_gap(2000, z));
    out.push_back(at_most("mehler_heine", gap, 0.01));
  }

  // Special functions.
  {
    const auto a0 = airy(0.0);
    const double ai0 = std::pow(3.0, -2.0 / 3.0) / std::exp(log_gamma(2.0 / 3.0));
    const double aip0 = -std::pow(3.0, -1.0 / 3.0) / std::exp(log_gamma(1.0 / 3.0));
    out.push_back(at_most("airy_at_zero",
                          std::max(std::abs(a0.ai - ai0), std::abs(a0.ai_prime - aip0)), 1e-12));
    double jump = 0.0;
    for (double x : {-8.0, -1.0, 1.0, 8.0}) {
      const auto lo = airy(std::nextafter(x, -1e9));
      const auto hi = airy(std::nextafter(x, 1e9));
      const double scale = std::max(std::abs(lo.ai), 1e-300);
      jump = std::max(jump, std::abs(lo.ai - hi.ai) / scale);
    }
    out.push_back(at_most("airy_branch_continuity", jump, 1e-8));
    double j0 = 0.0;
    for (double s : {1.0, 5.0, 20.0}) {
      // trapezoid on the periodic defining integral
      const int n = 2048;
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += std::cos(s * std::sin(2.0 * kPi * i / n));
      j0 = std::max(j0, std::abs(bessel_j0(s) - sum / n));
    }
    out.push_back(at_most("bessel_j0_integral", j0, 1e-10));
  }
  return out;
}

}  // namespace caustic
