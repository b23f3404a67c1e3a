#pragma once

namespace caustic {

struct AiryPair {
  double ai;
  double ai_prime;
};

inline constexpr double kAiryArgumentLimit = 1e4;
inline constexpr double kBesselArgumentLimit = 1e6;
inline constexpr long kMaxPolynomialDegree = 1000000;

/// Ai and Ai' for |x| <= 1e4.
///
/// Three regimes: Maclaurin series for |x| <= 1, Poincare asymptotic
/// expansions (at most 15 terms) for |x| >= 8, and in between a Taylor
/// re-expansion of Ai'' = x Ai stepped inward from the asymptotic values at
/// +-8. On x > 0 stepping toward the origin keeps Ai dominant, so relative
/// accuracy survives where the Maclaurin series would cancel.
AiryPair airy(double x);

/// J0(s) for |s| <= 1e6. Defining integral (1/pi) int_0^pi cos(s sin t) dt on a
/// 256-point Gauss-Legendre rule for |s| <= 50, Hankel asymptotics beyond.
double bessel_j0(double s);

/// Classical (unnormalized) Legendre polynomial P_N(t), |t| <= 1.
double legendre_poly(long N, double t);

/// ln Gamma(x) for x > 0 (Lanczos, g = 7).
double log_gamma(double x);

namespace detail {
inline constexpr double kAiryInnerRadius = 1.0;
inline constexpr double kAiryOuterRadius = 8.0;
inline constexpr int kAiryAsymptoticTerms = 15;

AiryPair airy_maclaurin(double x);
AiryPair airy_asymptotic(double x);
double bessel_j0_asymptotic(double s);
}  // namespace detail

}  // namespace caustic
