#include "caustic/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "caustic/errors.hpp"
#include "caustic/quadrature.hpp"

namespace caustic {

namespace {

constexpr double kPi = std::numbers::pi;

// Ai(0) = 3^{-2/3} / Gamma(2/3), -Ai'(0) = 3^{-1/3} / Gamma(1/3).
constexpr double kAiryC1 = 0.355028053887817239260063186004;
constexpr double kAiryC2 = 0.258819403792806798405183560189;

constexpr double kTaylorStep = 0.25;

// Advances (y, y') of y'' = x y from x0 to x0 + d with the local Taylor series.
AiryPair taylor_step(double x0, AiryPair y, double d) {
  // c_{n+2} = (x0 c_n + c_{n-1}) / ((n+2)(n+1))
  double cm1 = 0.0;
  double c0 = y.ai;
  double c1 = y.ai_prime;
  double value = c0 + c1 * d;
  double deriv = c1;
  double dpow = d;  // d^{n+1} for the upcoming c_{n+2}
  const double scale = std::abs(c0) + std::abs(c1) * std::max(1.0, std::abs(d));
  for (int n = 0; n < 200; ++n) {
    const double c2 = (x0 * c0 + cm1) / ((n + 2.0) * (n + 1.0));
    deriv += (n + 2.0) * c2 * dpow;
    dpow *= d;
    const double term = c2 * dpow;
    value += term;
    cm1 = c0;
    c0 = c1;
    c1 = c2;
    if (n > 4 && std::abs(term) <= 1e-18 * scale && std::abs(c1 * dpow) <= 1e-18 * scale &&
        std::abs(c0 * dpow) <= 1e-17 * scale)
      break;
  }
  return {value, deriv};
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidParameter(std::string(what) + ": argument must be finite");
}

}  // namespace

namespace detail {

AiryPair airy_maclaurin(double x) {
  const double x3 = x * x * x;
  double f = 1.0, g = x;
  double fp = 0.0, gp = 1.0;
  double a = 1.0;  // a_{k-1}
  double b = x;    // b_{k-1}
  for (int k = 1; k < 400; ++k) {
    fp += a * x * x / (3.0 * k - 1.0);
    gp += b * x * x / (3.0 * k);
    a *= x3 / ((3.0 * k - 1.0) * (3.0 * k));
    b *= x3 / ((3.0 * k) * (3.0 * k + 1.0));
    f += a;
    g += b;
    if (std::abs(a) <= 1e-18 * std::abs(f) && std::abs(b) <= 1e-18 * std::abs(g) + 1e-300 &&
        k > 2)
      break;
  }
  return {kAiryC1 * f - kAiryC2 * g, kAiryC1 * fp - kAiryC2 * gp};
}

AiryPair airy_asymptotic(double x) {
  const double t = std::abs(x);
  const double zeta = 2.0 / 3.0 * t * std::sqrt(t);
  // u_k and v_k coefficients of the Airy asymptotic series
  std::array<double, kAiryAsymptoticTerms> u{}, v{};
  u[0] = 1.0;
  v[0] = 1.0;
  for (int k = 1; k < kAiryAsymptoticTerms; ++k) {
    u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
           ((2.0 * k - 1.0) * 216.0 * k);
    v[k] = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u[k];
  }
  const double quarter = std::pow(t, 0.25);
  if (x > 0) {
    double su = 0.0, sv = 0.0, zpow = 1.0, sign = 1.0;
    for (int k = 0; k < kAiryAsymptoticTerms; ++k) {
      su += sign * u[k] / zpow;
      sv += sign * v[k] / zpow;
      zpow *= zeta;
      sign = -sign;
    }
    const double e = std::exp(-zeta) / (2.0 * std::sqrt(kPi));
    return {e / quarter * su, -e * quarter * sv};
  }
  double ue = 0.0, uo = 0.0, ve = 0.0, vo = 0.0;
  double zpow = 1.0;
  for (int k = 0; k < kAiryAsymptoticTerms; ++k) {
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      ue += sign * u[k] / zpow;
      ve += sign * v[k] / zpow;
    } else {
      uo += sign * u[k] / zpow;
      vo += sign * v[k] / zpow;
    }
    zpow *= zeta;
  }
  const double chi = zeta - kPi / 4.0;
  const double cs = std::cos(chi), sn = std::sin(chi);
  const double rs = 1.0 / std::sqrt(kPi);
  return {rs / quarter * (cs * ue + sn * uo), rs * quarter * (sn * ve - cs * vo)};
}

double bessel_j0_asymptotic(double s) {
  s = std::abs(s);
  // a_k = prod_{j<=k} (2j-1)^2 / (k! 8^k)
  double p = 0.0, q = 0.0, a = 1.0, spow = 1.0;
  for (int k = 0; k < 24; ++k) {
    const double term = a / spow;
    // P carries (-1)^j on a_{2j}, Q carries -(-1)^j on a_{2j+1}
    const double sign = (((k + 1) / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0)
      p += sign * term;
    else
      q += sign * term;
    if (k > 2 && term < 1e-17) break;
    const double odd = 2.0 * k + 1.0;
    a *= odd * odd / (8.0 * (k + 1.0));
    spow *= s;
  }
  const double chi = s - kPi / 4.0;
  return std::sqrt(2.0 / (kPi * s)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace detail

AiryPair airy(double x) {
  check_finite(x, "airy");
  if (std::abs(x) > kAiryArgumentLimit)
    throw InvalidParameter("airy: |x| exceeds " + std::to_string(kAiryArgumentLimit));
  const double r = std::abs(x);
  if (r <= detail::kAiryInnerRadius) return detail::airy_maclaurin(x);
  if (r >= detail::kAiryOuterRadius) return detail::airy_asymptotic(x);

  const double anchor = std::copysign(detail::kAiryOuterRadius, x);
  const int steps = static_cast<int>(std::ceil((detail::kAiryOuterRadius - r) / kTaylorStep));
  const double d = (x - anchor) / steps;
  AiryPair y = detail::airy_asymptotic(anchor);
  for (int i = 0; i < steps; ++i) y = taylor_step(anchor + i * d, y, d);
  return y;
}

double bessel_j0(double s) {
  check_finite(s, "bessel_j0");
  const double r = std::abs(s);
  if (r > kBesselArgumentLimit)
    throw InvalidParameter("bessel_j0: |s| exceeds " + std::to_string(kBesselArgumentLimit));
  if (r == 0.0) return 1.0;
  if (r > 50.0) return detail::bessel_j0_asymptotic(r);
  const auto& rule = cached_gauss_legendre(256);
  return rule.apply([r](double t) { return std::cos(r * std::sin(t)); }, 0.0, kPi) / kPi;
}

double legendre_poly(long N, double t) {
  if (N < 0 || N > kMaxPolynomialDegree)
    throw InvalidParameter("legendre_poly: degree out of range");
  if (!(std::abs(t) <= 1.0)) throw DomainError("legendre_poly: |t| must not exceed 1");
  if (N == 0) return 1.0;
  double p0 = 1.0, p1 = t;
  for (long n = 1; n < N; ++n) {
    const double p2 = ((2.0 * n + 1.0) * t * p1 - n * p0) / (n + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("log_gamma: x must be positive");
  if (x < 0.5) return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
  static constexpr std::array<double, 9> coef = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  const double z = x - 1.0;
  double sum = coef[0];
  for (int i = 1; i < 9; ++i) sum += coef[i] / (z + i);
  const double t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

}  // namespace caustic
