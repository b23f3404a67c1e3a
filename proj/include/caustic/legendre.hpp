#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "caustic/scaled_value.hpp"

namespace caustic {

inline constexpr long kMaxDegree = 1000000;

/// Ladder sequence with fixed ratio c = 2 m0 / (2 N0 + 1).
class Ladder {
public:
  Ladder(long m0, long N0);

  long m0() const noexcept { return m0_; }
  long N0() const noexcept { return N0_; }
  long c_numerator() const noexcept { return 2 * m0_; }
  long c_denominator() const noexcept { return 2 * N0_ + 1; }
  double c() const noexcept {
    return static_cast<double>(c_numerator()) / static_cast<double>(c_denominator());
  }

private:
  long m0_;
  long N0_;
};

struct LadderMember {
  long m;
  long N;
  double h;  // 1 / (N + 1/2)
};

/// k-th member ((2k+1) m0, (2k+1) N0 + k). Throws InvalidParameter past kMaxDegree.
LadderMember ladder_member(const Ladder& ladder, long k);

/// Member for an arbitrary (N, m) pair, h = 1/(N + 1/2).
LadderMember make_member(long N, long m);

/// Orthonormal associated Legendre function on [-1, 1]:
///   int_{-1}^{1} P(x)^2 dx = 1,  P > 0 near x = 1,  P(-x) = (-1)^{N+m} P(x).
/// Ascending-degree recurrence at fixed order from the closed-form P^m_m seed.
ScaledValue legendre_assoc_norm(long N, long m, double x);

/// Same as legendre_assoc_norm for many x; OpenMP over points.
std::vector<ScaledValue> legendre_assoc_norm_batch(long N, long m, std::span<const double> xs);

/// Serial reference for legendre_assoc_norm_batch.
std::vector<ScaledValue> legendre_assoc_norm_batch_serial(long N, long m,
                                                          std::span<const double> xs);

/// u_h(phi) = sqrt(sin phi) P^m_N(cos phi), phi in (0, pi).
ScaledValue mode_u(const LadderMember& member, double phi);

/// |Y^m_N(phi, theta)|^2 = P^{|m|}_N(cos phi)^2 / (2 pi); independent of theta.
double sph_harm_sq(long N, long m, double phi);

struct OdeResidual {
  double residual;          // normalized; NaN if P vanishes on the whole stencil
  bool rounding_dominated;  // truncation error is below the rounding floor
};

/// Residual of (1-x^2) P'' - 2x P' + ((N+1/2)^2 - m^2/(1-x^2) - 1/4) P with
/// Richardson-extrapolated central differences (steps `step`, `step/2`),
/// divided by (N+1/2)^2 times the local amplitude hypot(P, sqrt(1-x^2) P'/(N+1/2)).
/// Requires |x| <= 0.9 and 0 < step <= kMaxResidualStep.
inline constexpr double kMaxResidualStep = 0.01;
OdeResidual ode_residual(long N, long m, double x, double step);

namespace detail {
/// Recurrence with the b-coefficient multiplied by `b_scale`; 1 is the
/// correct value, anything else is a fault-injection hook for self-tests.
ScaledValue legendre_assoc_norm_impl(long N, long m, double x, double b_scale);
}  // namespace detail

}  // namespace caustic
