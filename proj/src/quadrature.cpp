#include "caustic/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "caustic/errors.hpp"

namespace caustic {

namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int j = 2; j <= n; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

// Kronrod 15-point / Gauss 7-point pair on [-1, 1] (QUADPACK qk15 constants).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct KronrodResult {
  double value;
  double error;
  double abs_value;
};

KronrodResult kronrod15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  return {resk * half, std::abs((resk - resg) * half), resabs * std::abs(half)};
}

struct AdaptiveState {
  const std::function<double(double)>& f;
  double tol_per_length;
  double error = 0.0;
  long intervals = 1;
  bool failed = false;
};

double refine(AdaptiveState& st, double a, double b, const KronrodResult& whole, int depth) {
  const double local_tol = st.tol_per_length * (b - a);
  const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * whole.abs_value;
  if (whole.error <= std::max(local_tol, roundoff)) {
    st.error += whole.error;
    return whole.value;
  }
  if (depth >= kMaxRefinementDepth || st.intervals >= kMaxSubintervals) {
    st.failed = true;
    st.error += whole.error;
    return whole.value;
  }
  const double mid = 0.5 * (a + b);
  st.intervals += 1;
  const auto left = kronrod15(st.f, a, mid);
  const auto right = kronrod15(st.f, mid, b);
  return refine(st, a, mid, left, depth + 1) + refine(st, mid, b, right, depth + 1);
}

double integrate_plain(const std::function<double(double)>& f, double a, double b, double tol) {
  AdaptiveState st{f, tol / (b - a)};
  const double value = refine(st, a, b, kronrod15(f, a, b), 0);
  if (st.failed) {
    throw AccuracyFailure("integrate: no convergence within refinement depth " +
                              std::to_string(kMaxRefinementDepth) + " or " +
                              std::to_string(kMaxSubintervals) + " subintervals",
                          value, st.error);
  }
  return value;
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1 || n > kMaxGaussNodes)
    throw InvalidParameter("gauss_legendre: n must be in [1, " + std::to_string(kMaxGaussNodes) +
                           "], got " + std::to_string(n));
  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  const double nd = n;
  for (int i = 1; i <= half; ++i) {
    // Tricomi's asymptotic guess for the i-th largest root.
    double x = (1.0 - (nd - 1.0) / (8.0 * nd * nd * nd)) *
               std::cos(std::numbers::pi * (i - 0.25) / (nd + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, d] = legendre_with_derivative(n, x);
      const double dx = p / d;
      x -= dx;
      dp = d;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    dp = legendre_with_derivative(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    if (2 * i - 1 == n) x = 0.0;
    rule.nodes[i - 1] = -x;
    rule.nodes[n - i] = x;
    rule.weights[i - 1] = w;
    rule.weights[n - i] = w;
  }
  return rule;
}

const QuadratureRule& cached_gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const QuadratureRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const QuadratureRule>(gauss_legendre(n));
  return *slot;
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 EndpointSingularity singularity) {
  if (!(a < b)) throw InvalidParameter("integrate: requires a < b");
  if (!(tol > 0.0)) throw InvalidParameter("integrate: tolerance must be positive");

  switch (singularity) {
    case EndpointSingularity::none:
      return integrate_plain(f, a, b, tol);
    case EndpointSingularity::sqrt_at_a: {
      auto g = [&](double u) { return 2.0 * u * f(a + u * u); };
      return integrate_plain(g, 0.0, std::sqrt(b - a), tol);
    }
    case EndpointSingularity::sqrt_at_b: {
      auto g = [&](double u) { return 2.0 * u * f(b - u * u); };
      return integrate_plain(g, 0.0, std::sqrt(b - a), tol);
    }
    case EndpointSingularity::sqrt_both: {
      const double mid = 0.5 * (a + b);
      return integrate(f, a, mid, 0.5 * tol, EndpointSingularity::sqrt_at_a) +
             integrate(f, mid, b, 0.5 * tol, EndpointSingularity::sqrt_at_b);
    }
  }
  return integrate_plain(f, a, b, tol);
}

}  // namespace caustic
