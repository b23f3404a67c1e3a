#include "caustic/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "caustic/errors.hpp"
#include "caustic/parallel.hpp"

namespace caustic {

namespace {

constexpr double kPi = std::numbers::pi;

void check_degree_order(long N, long m) {
  if (N < 0 || m < 0) throw DomainError("degree and order must be nonnegative");
  if (m > N) throw DomainError("order exceeds degree");
  if (N > kMaxDegree) throw InvalidParameter("degree exceeds " + std::to_string(kMaxDegree));
}

void check_x(double x) {
  if (!(std::abs(x) <= 1.0)) throw DomainError("x must lie in [-1, 1]");
}

// sqrt((2m+1)/2 * (2m)! / (4^m (m!)^2)) * (1-x^2)^{m/2}. The factorial ratio is
// prod_{j<=m} (2j-1)/(2j) ~ 1/sqrt(pi m), so only the power can leave the
// double range.
ScaledValue seed_value(long m, double x) {
  double ratio = 1.0;
  for (long j = 1; j <= m; ++j) ratio *= (2.0 * j - 1.0) / (2.0 * j);
  const double coef = std::sqrt((2.0 * m + 1.0) / 2.0 * ratio);
  if (m == 0) return ScaledValue{coef};
  // 1 - x^2 = (1 - x)(1 + x) avoids cancellation near the poles.
  const double sin2 = (1.0 - x) * (1.0 + x);
  const double md = static_cast<double>(m);
  const double log10_power = 0.5 * md * std::log10(sin2);
  if (log10_power > -280.0) return ScaledValue{coef * std::pow(sin2, 0.5 * md)};
  return ScaledValue::from_log10(std::log10(coef) + log10_power);
}

}  // namespace

Ladder::Ladder(long m0, long N0) : m0_(m0), N0_(N0) {
  if (m0 < 0) throw InvalidParameter("ladder: m0 must be nonnegative");
  if (N0 < m0) throw InvalidParameter("ladder: N0 must be at least m0");
  if (N0 > kMaxDegree) throw InvalidParameter("ladder: N0 too large");
}

LadderMember ladder_member(const Ladder& ladder, long k) {
  if (k < 0) throw InvalidParameter("ladder_member: k must be nonnegative");
  // N_k = (2k+1) N0 + k must stay within kMaxDegree.
  const long double n = (2.0L * k + 1.0L) * ladder.N0() + k;
  if (n > kMaxDegree) throw InvalidParameter("ladder_member: N_k exceeds " + std::to_string(kMaxDegree));
  const long odd = 2 * k + 1;
  return make_member(odd * ladder.N0() + k, odd * ladder.m0());
}

LadderMember make_member(long N, long m) {
  check_degree_order(N, m);
  return {m, N, 2.0 / (2.0 * static_cast<double>(N) + 1.0)};
}

namespace detail {

ScaledValue legendre_assoc_norm_impl(long N, long m, double x, double b_scale) {
  check_degree_order(N, m);
  check_x(x);
  if (m > 0 && std::abs(x) == 1.0) return ScaledValue{};

  const ScaledValue seed = seed_value(m, x);
  if (N == m) return seed;

  // Carry the two most recent values with a shared decimal exponent.
  double p0 = seed.mantissa();
  double p1 = std::sqrt(2.0 * m + 3.0) * x * p0;
  std::int64_t exp10 = seed.exp10();
  const double md = static_cast<double>(m);
  for (long n = m + 2; n <= N; ++n) {
    const double nd = static_cast<double>(n);
    const double nm = nd - md, np = nd + md;
    const double a = std::sqrt((2.0 * nd - 1.0) * (2.0 * nd + 1.0) / (nm * np));
    const double b = b_scale * std::sqrt((2.0 * nd + 1.0) / (2.0 * nd - 3.0) *
                                          ((nm - 1.0) * (np - 1.0)) / (nm * np));
    const double p2 = a * x * p1 - b * p0;
    p0 = p1;
    p1 = p2;
    const double mag = std::max(std::abs(p0), std::abs(p1));
    if (mag > ScaledValue::kBandHigh) {
      p0 *= 1e-140;
      p1 *= 1e-140;
      exp10 += ScaledValue::kBandShift;
    } else if (mag < ScaledValue::kBandLow && mag != 0.0) {
      p0 *= 1e140;
      p1 *= 1e140;
      exp10 -= ScaledValue::kBandShift;
    }
  }
  return ScaledValue{p1, exp10};
}

}  // namespace detail

ScaledValue legendre_assoc_norm(long N, long m, double x) {
  return detail::legendre_assoc_norm_impl(N, m, x, 1.0);
}

std::vector<ScaledValue> legendre_assoc_norm_batch_serial(long N, long m,
                                                          std::span<const double> xs) {
  check_degree_order(N, m);
  std::vector<ScaledValue> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(legendre_assoc_norm(N, m, x));
  return out;
}

std::vector<ScaledValue> legendre_assoc_norm_batch(long N, long m, std::span<const double> xs) {
  check_degree_order(N, m);
  std::vector<ScaledValue> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = legendre_assoc_norm(N, m, xs[i]); });
  return out;
}

ScaledValue mode_u(const LadderMember& member, double phi) {
  if (!(phi > 0.0 && phi < kPi)) throw DomainError("mode_u: phi must lie in (0, pi)");
  return legendre_assoc_norm(member.N, member.m, std::cos(phi)) * std::sqrt(std::sin(phi));
}

double sph_harm_sq(long N, long m, double phi) {
  if (!(phi > 0.0 && phi < kPi)) throw DomainError("sph_harm_sq: phi must lie in (0, pi)");
  const long am = m < 0 ? -m : m;
  const ScaledValue p = legendre_assoc_norm(N, am, std::cos(phi));
  return (p * p).value() / (2.0 * kPi);
}

OdeResidual ode_residual(long N, long m, double x, double step) {
  check_degree_order(N, m);
  if (!(std::abs(x) <= 0.9)) throw DomainError("ode_residual: |x| must not exceed 0.9");
  if (!(step > 0.0 && step <= kMaxResidualStep))
    throw InvalidParameter("ode_residual: step must be in (0, 0.01]");

  const double half = 0.5 * step;
  const ScaledValue centre = legendre_assoc_norm(N, m, x);
  const ScaledValue stencil[4] = {
      legendre_assoc_norm(N, m, x - step), legendre_assoc_norm(N, m, x - half),
      legendre_assoc_norm(N, m, x + half), legendre_assoc_norm(N, m, x + step)};

  // Express everything relative to the largest decimal exponent on the stencil;
  // mantissas sharing that exponent are used as they are.
  std::int64_t ref_exp = centre.exp10();
  for (const auto& s : stencil) ref_exp = std::max(ref_exp, s.exp10());
  const auto rel = [ref_exp](const ScaledValue& v) {
    if (v.is_zero()) return 0.0;
    return v.mantissa() * std::pow(10.0, static_cast<double>(v.exp10() - ref_exp));
  };
  const double p = rel(centre);
  const double pm = rel(stencil[0]), pmh = rel(stencil[1]);
  const double pph = rel(stencil[2]), pp = rel(stencil[3]);

  const double d1_full = (pp - pm) / (2.0 * step);
  const double d1_half = (pph - pmh) / (2.0 * half);
  const double d2_full = (pp - 2.0 * p + pm) / (step * step);
  const double d2_half = (pph - 2.0 * p + pmh) / (half * half);
  const double d1 = (4.0 * d1_half - d1_full) / 3.0;
  const double d2 = (4.0 * d2_half - d2_full) / 3.0;

  const double nu = static_cast<double>(N) + 0.5;
  const double md = static_cast<double>(m);
  const double one_minus_x2 = (1.0 - x) * (1.0 + x);
  const double lhs =
      one_minus_x2 * d2 - 2.0 * x * d1 + (nu * nu - md * md / one_minus_x2 - 0.25) * p;
  // Local amplitude from value and slope; unlike the stencil maximum it does not
  // depend on the step, so the observed Richardson order stays clean near nodes.
  const double amplitude = std::hypot(p, std::sqrt(one_minus_x2) * d1 / nu);
  if (amplitude == 0.0) return {std::numeric_limits<double>::quiet_NaN(), true};
  const double residual = std::abs(lhs) / (nu * nu * amplitude);

  // Rounding in the extrapolated second difference. Recurrence values carry
  // about (N+1) eps of relative noise, amplified by 16/3 / half^2.
  const double noise = std::numeric_limits<double>::epsilon() * static_cast<double>(N + 1);
  const double floor = noise * (16.0 / 3.0) / (half * half) * one_minus_x2 / (nu * nu) *
                       (std::max({std::abs(p), std::abs(pm), std::abs(pp)}) / amplitude);
  return {residual, residual < 10.0 * floor};
}

}  // namespace caustic
