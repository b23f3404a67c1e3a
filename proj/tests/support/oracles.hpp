#pragma once
// Independent reference implementations shared by the unit and acceptance suites.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <numbers>
#include <vector>

namespace caustic::oracles {

using Rational = boost::multiprecision::cpp_rational;

// Exact Rodrigues form without the Condon-Shortley phase:
//   P = sqrt((2N+1)/2 (N-m)!/(N+m)! (1-x^2)^m) * d^{N+m}[(x^2-1)^N](x) / (2^N N!)
// evaluated at a rational x, then rounded once to double.
inline double rodrigues_oracle(int N, int m, const Rational& x) {
  std::vector<Rational> poly(2 * N + 1);  // coefficients of (x^2 - 1)^N
  for (int j = 0; j <= N; ++j) {
    Rational binom = 1;
    for (int i = 0; i < j; ++i) binom = binom * (N - i) / (i + 1);
    poly[2 * j] = ((N - j) % 2 == 0) ? binom : Rational(-binom);
  }
  for (int d = 0; d < N + m; ++d) {
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) poly[i] = poly[i + 1] * Rational(i + 1);
    poly.back() = 0;
  }
  Rational deriv = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) deriv = deriv * x + *it;
  Rational scale = 1;
  for (int i = 1; i <= N; ++i) scale *= 2 * i;  // 2^N N!
  deriv /= scale;
  Rational factor = Rational(2 * N + 1, 2);
  for (int i = N - m + 1; i <= N + m; ++i) factor /= i;
  const Rational one_minus = 1 - x * x;
  for (int i = 0; i < m; ++i) factor *= one_minus;
  const double mag = std::sqrt(factor.convert_to<double>());
  return deriv.convert_to<double>() * mag;
}

// (1/2pi) int_0^{2pi} cos(s sin u) du by the trapezoid rule (spectrally accurate).
inline double j0_trapezoid(double s, int n = 4096) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += std::cos(s * std::sin(2.0 * std::numbers::pi * i / n));
  return sum / n;
}

}  // namespace caustic::oracles
