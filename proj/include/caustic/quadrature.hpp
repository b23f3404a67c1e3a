#pragma once

#include <functional>
#include <vector>

namespace caustic {

/// Gauss-Legendre rule on [-1, 1]. Nodes ascending, weights positive.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }

  /// Applies the rule to f mapped affinely onto [a, b].
  template <class F>
  double apply(F&& f, double a = -1.0, double b = 1.0) const {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      sum += weights[i] * f(mid + half * nodes[i]);
    return half * sum;
  }
};

inline constexpr int kMaxGaussNodes = 20000;

/// n-point Gauss-Legendre rule, 1 <= n <= kMaxGaussNodes. Exact for degree <= 2n-1.
QuadratureRule gauss_legendre(int n);

/// Shared read-only rule, built once per n.
const QuadratureRule& cached_gauss_legendre(int n);

enum class EndpointSingularity {
  none,
  sqrt_at_a,  // psi = a + u^2
  sqrt_at_b,  // psi = b - u^2
  sqrt_both,  // split at the midpoint, substitute on each half
};

inline constexpr int kMaxRefinementDepth = 60;
/// Total subinterval budget per call; noisy integrands fail instead of hanging.
inline constexpr long kMaxSubintervals = 1L << 17;

/// Adaptive Gauss-Kronrod (7/15) bisection with absolute tolerance `tol`.
/// The sqrt flags remove an inverse-square-root endpoint singularity.
/// Throws AccuracyFailure if some interval is still unresolved at the depth limit
/// or the subinterval budget runs out.
double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 EndpointSingularity singularity = EndpointSingularity::none);

}  // namespace caustic
