#include "caustic/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "caustic/errors.hpp"
#include "caustic/legendre.hpp"
#include "caustic/parallel.hpp"
#include "caustic/quadrature.hpp"
#include "caustic/specfun.hpp"

namespace caustic {

namespace {

constexpr double kPi = std::numbers::pi;

void check_measure_args(long N, double c0) {
  if (N < 1) throw InvalidParameter("empirical_measure: N must be at least 1");
  if (N > kMaxMeasureDegree)
    throw InvalidParameter("empirical_measure: N exceeds " + std::to_string(kMaxMeasureDegree));
  if (!(c0 > 0.0 && c0 < 1.0)) throw DomainError("empirical_measure: c0 must lie in (0, 1)");
}

// w_m = (2 pi / (N + 1/2)) P^m_N(x)^2 / (2 pi) = P^m_N(x)^2 / (N + 1/2)
double weight(long N, long m, double x) {
  const ScaledValue p = legendre_assoc_norm(N, m, x);
  return (p * p).value() / (static_cast<double>(N) + 0.5);
}

EmpiricalMeasure mirror(long N, double c0, const std::vector<double>& half) {
  EmpiricalMeasure mu{N, c0, {}};
  mu.atoms.reserve(2 * N + 1);
  const double nd = static_cast<double>(N);
  for (long m = -N; m <= N; ++m) {
    const long am = m < 0 ? -m : m;
    mu.atoms.push_back({static_cast<double>(m) / nd, half[am]});
  }
  return mu;
}

double evaluation_x(double c0) { return std::cos(kPi - std::asin(c0)); }

}  // namespace

double EmpiricalMeasure::total_mass() const {
  double sum = 0.0;
  for (const auto& a : atoms) sum += a.w;
  return sum;
}

double EmpiricalMeasure::mass_outside(double bound) const {
  double sum = 0.0;
  for (const auto& a : atoms)
    if (std::abs(a.t) > bound) sum += a.w;
  return sum;
}

EmpiricalMeasure empirical_measure(long N, double c0) {
  check_measure_args(N, c0);
  const double x = evaluation_x(c0);
  std::vector<double> half(N + 1);
  parallel_for(half.size(), [&](std::size_t m) { half[m] = weight(N, static_cast<long>(m), x); });
  return mirror(N, c0, half);
}

EmpiricalMeasure empirical_measure_serial(long N, double c0) {
  check_measure_args(N, c0);
  const double x = evaluation_x(c0);
  std::vector<double> half(N + 1);
  for (long m = 0; m <= N; ++m) half[m] = weight(N, m, x);
  return mirror(N, c0, half);
}

double integrate_against(const EmpiricalMeasure& mu, const std::function<double(double)>& f) {
  double sum = 0.0;
  for (const auto& a : mu.atoms) sum += f(a.t) * a.w;
  return sum;
}

double arcsine_limit(double c0, const std::function<double(double)>& f) {
  if (!(c0 > 0.0 && c0 < 1.0)) throw DomainError("arcsine_limit: c0 must lie in (0, 1)");
  auto integrand = [&](double t) {
    const double r = t / c0;
    return f(t) / std::sqrt((1.0 - r) * (1.0 + r));
  };
  return integrate(integrand, -c0, c0, 1e-12, EndpointSingularity::sqrt_both) / (c0 * kPi);
}

std::complex<double> char_fn_direct(const EmpiricalMeasure& mu, double s) {
  double re = 0.0, im = 0.0;
  for (const auto& a : mu.atoms) {
    re += a.w * std::cos(s * a.t);
    im += a.w * std::sin(s * a.t);
  }
  return {re / (2.0 * kPi), im / (2.0 * kPi)};
}

double char_fn_addition(long N, double c0, double s) {
  if (N < 1) throw InvalidParameter("char_fn_addition: N must be at least 1");
  if (!(c0 > 0.0 && c0 < 1.0)) throw DomainError("char_fn_addition: c0 must lie in (0, 1)");
  // 1 - cos(s/N) = 2 sin^2(s/(2N))
  const double half = std::sin(0.5 * s / static_cast<double>(N));
  const double arg = std::clamp(1.0 - 2.0 * c0 * c0 * half * half, -1.0, 1.0);
  return legendre_poly(N, arg) / (2.0 * kPi);
}

double mehler_heine_gap(long N, double z) {
  if (N < 1) throw InvalidParameter("mehler_heine_gap: N must be at least 1");
  if (!(z >= 0.0)) throw DomainError("mehler_heine_gap: z must be nonnegative");
  if (!(z / static_cast<double>(N) < kPi)) throw DomainError("mehler_heine_gap: z/N must be below pi");
  return std::abs(legendre_poly(N, std::cos(z / static_cast<double>(N))) - bessel_j0(z));
}

double j0_fourier_gap(double t, double S) {
  if (!(std::abs(t) < 0.99)) throw DomainError("j0_fourier_gap: |t| must be below 0.99");
  if (!(S >= 100.0)) throw InvalidParameter("j0_fourier_gap: truncation S must be at least 100");
  auto integrand = [t, S](double s) { return (1.0 - s / S) * std::cos(s * t) * bessel_j0(s); };
  // Panels of a few oscillations keep each adaptive call cheap.
  constexpr double kPanel = 8.0;
  const int panels = static_cast<int>(std::ceil(S / kPanel));
  const double width = S / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i)
    sum += integrate(integrand, i * width, (i + 1) * width, 1e-11 / panels);
  const double target = 2.0 / std::sqrt((1.0 - t) * (1.0 + t));
  return std::abs(2.0 * sum - target);
}

}  // namespace caustic
