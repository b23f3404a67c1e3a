#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace caustic {

inline constexpr long kMaxMeasureDegree = 10000;

struct Atom {
  double t;  // m / N
  double w;  // (2 pi / (N + 1/2)) |Y^m_N|^2 on the latitude circle
};

/// Normalized empirical measure of the restrictions |Y^m_N|^2, m = -N..N, to
/// the latitude circle sin(phi) = c0. Atoms are ordered by m.
struct EmpiricalMeasure {
  long N = 0;
  double c0 = 0.0;
  std::vector<Atom> atoms;

  double total_mass() const;
  /// Mass of the atoms with |t| > bound.
  double mass_outside(double bound) const;
};

/// Builds the measure for 1 <= N <= kMaxMeasureDegree, 0 < c0 < 1, evaluating
/// at phi = pi - arcsin(c0). Weights are computed in parallel over m.
EmpiricalMeasure empirical_measure(long N, double c0);

/// Serial reference for empirical_measure.
EmpiricalMeasure empirical_measure_serial(long N, double c0);

/// sum_m f(t_m) w_m in ascending m.
double integrate_against(const EmpiricalMeasure& mu, const std::function<double(double)>& f);

/// Arcsine limit (1/(c0 pi)) int_{-c0}^{c0} f(t) (1 - (t/c0)^2)^{-1/2} dt.
double arcsine_limit(double c0, const std::function<double(double)>& f);

/// (1/2pi) sum_m w_m exp(i s t_m).
std::complex<double> char_fn_direct(const EmpiricalMeasure& mu, double s);

/// (1/2pi) P_N(1 - c0^2 (1 - cos(s/N))), the addition-theorem route.
double char_fn_addition(long N, double c0, double s);

/// |P_N(cos(z/N)) - J0(z)| for z >= 0, z/N < pi.
double mehler_heine_gap(long N, double z);

/// |2 int_0^S (1 - s/S) cos(s t) J0(s) ds - 2/sqrt(1-t^2)| for |t| < 0.99, S >= 100.
double j0_fourier_gap(double t, double S);

}  // namespace caustic
