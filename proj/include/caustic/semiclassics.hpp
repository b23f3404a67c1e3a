#pragma once

#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "caustic/legendre.hpp"

namespace caustic {

/// Turning-point exclusion for the allowed-region WKB formula.
inline constexpr double kWkbExclusion = 0.05;
/// Width of the window below phi+ where the Airy formula is evaluated.
inline constexpr double kAiryWindow = 0.3;
/// Below this distance to phi+ the caustic ratio 4 rho / (sin^2 - c^2) uses its limit.
inline constexpr double kCausticLimitDistance = 1e-4;
/// Airy arguments beyond this defer to the WKB form.
inline constexpr double kAiryDeferArgument = 1e4;

struct TurningPoints {
  double phi_minus;
  double phi_plus;
};

/// Solutions of sin(phi) = c in (0, pi), 0 < c < 1.
TurningPoints turning_points(double c);

/// Geometry of one ladder ratio c: turning points and V(phi) = c^2 / sin^2(phi).
class LadderGeometry {
public:
  explicit LadderGeometry(double c);
  explicit LadderGeometry(const Ladder& ladder) : LadderGeometry(ladder.c()) {}

  double c() const noexcept { return c_; }
  double phi_minus() const noexcept { return phi_minus_; }
  double phi_plus() const noexcept { return phi_plus_; }

  double potential(double phi) const;

  /// sin^2(phi) - c^2, accurate near the turning points.
  double gap(double phi) const;

  /// V'(phi+) = 2 sqrt(1 - c^2) / c.
  double potential_slope_at_caustic() const;

  bool allowed(double phi) const noexcept { return phi >= phi_minus_ && phi <= phi_plus_; }

private:
  double c_;
  double phi_minus_;
  double phi_plus_;
};

/// A(phi) = int_phi^{phi+} sqrt(1 - c^2 / sin^2 psi) d psi for phi in [phi-, phi+].
double action(const LadderGeometry& geom, double phi);

/// rho(phi) = ((3/2) A(phi))^{2/3} is the consistent Airy argument. The
/// theorem_literal variant uses the 4/3 coefficient on the two-sided arc,
/// ((8/3) A)^{2/3}; it exists only to show that it fails the WKB matching.
enum class AiryArgument { consistent, theorem_literal };

double airy_arg_rho(const LadderGeometry& geom, double phi,
                    AiryArgument variant = AiryArgument::consistent);

/// 4 rho(phi) / (sin^2 phi - c^2), by its limit (2/c)^{4/3} (1-c^2)^{-1/3}
/// within kCausticLimitDistance of phi+.
double caustic_ratio(const LadderGeometry& geom, double phi,
                     AiryArgument variant = AiryArgument::consistent);

/// sqrt(2 sin(phi) / pi) (sin^2 phi - c^2)^{-1/4}.
double wkb_envelope(const LadderGeometry& geom, double phi);

/// consistent: envelope * cos(A/h - pi/4), which matches the mode up to a
/// global sign (-1)^{N-m}. literal: the case-split display with +pi/4
/// (cos for N-m odd, -sin for N-m even); a quarter period off for N-m odd.
enum class WkbPhase { consistent, literal };

/// Leading allowed-region WKB value. Throws ProximityError within
/// kWkbExclusion of a turning point, DomainError outside [phi-, phi+].
double wkb_leading(const LadderMember& member, const LadderGeometry& geom, double phi,
                   WkbPhase phase = WkbPhase::consistent);

/// Leading Airy caustic term
///   sqrt(sin phi) h^{-1/6} (4 rho / (sin^2 phi - c^2))^{1/4} Ai(-h^{-2/3} rho)
/// for phi in (phi+ - kAiryWindow, phi+].
double airy_leading(const LadderMember& member, const LadderGeometry& geom, double phi,
                    AiryArgument variant = AiryArgument::consistent);

/// Explicit latitudes, or n points phi+ - j h^{2/3}, j = 1..n, per ladder member.
struct CausticGrid {
  int points;
};
using PhiSpec = std::variant<std::vector<double>, CausticGrid>;

struct ErrorRow {
  long k;
  long N;
  long m;
  double h;
  double phi;
  double exact;
  double wkb;       // NaN outside the WKB window
  double airy;      // NaN outside the Airy window
  double err_wkb;   // |wkb - s * exact|, NaN when wkb is
  double err_airy;
};

/// Per-member aggregates over the grid.
struct MemberSummary {
  long k;
  double h;
  int sign_wkb = 0;  // 0 when no row has a WKB value
  int sign_airy = 0;
  bool sign_consistent_wkb = true;
  bool sign_consistent_airy = true;
  double max_err_wkb = 0.0;  // NaN when undefined
  double max_err_airy = 0.0;
  double max_exact_wkb = 0.0;  // max |exact| over rows with a WKB value
  double max_exact_airy = 0.0;
};

struct ErrorTable {
  double c = 0.0;
  std::vector<ErrorRow> rows;  // sorted by k, then phi
  std::vector<MemberSummary> members;
  std::optional<double> fitted_order_wkb;
  std::optional<double> fitted_order_airy;
};

/// Exact-vs-asymptotic comparison along a ladder. Rows are evaluated in
/// parallel; the output does not depend on the worker count.
ErrorTable caustic_scan(const Ladder& ladder, std::span<const long> ks, const PhiSpec& phis);

/// Serial reference for caustic_scan.
ErrorTable caustic_scan_serial(const Ladder& ladder, std::span<const long> ks,
                               const PhiSpec& phis);

/// Least-squares slope of log(err) against log(h). Needs >= 3 pairs with
/// err > 0 and h strictly decreasing; throws InvalidData otherwise.
double fit_order(std::span<const std::pair<double, double>> pairs);

/// max |airy_leading - wkb_leading| / envelope over the given latitudes.
double wkb_airy_matching_gap(const LadderMember& member, const LadderGeometry& geom,
                             std::span<const double> phis,
                             AiryArgument variant = AiryArgument::consistent);

/// max |mode_u| on `points` equally spaced latitudes in [phi+ - 6 h^{2/3}, phi+].
double caustic_peak(const LadderMember& member, const LadderGeometry& geom, int points = 601);

}  // namespace caustic
