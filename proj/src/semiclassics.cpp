#include "caustic/semiclassics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "caustic/errors.hpp"
#include "caustic/parallel.hpp"
#include "caustic/quadrature.hpp"
#include "caustic/specfun.hpp"

namespace caustic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double rho_coefficient(AiryArgument variant) {
  return variant == AiryArgument::consistent ? 1.5 : 8.0 / 3.0;
}

void check_c(double c) {
  if (!(c > 0.0 && c < 1.0)) throw DomainError("c must lie in (0, 1)");
}

double wkb_consistent(const LadderMember& member, const LadderGeometry& geom, double phi) {
  return wkb_envelope(geom, phi) * std::cos(action(geom, phi) / member.h - kPi / 4.0);
}

}  // namespace

TurningPoints turning_points(double c) {
  check_c(c);
  const double phi0 = std::asin(c);
  return {phi0, kPi - phi0};
}

LadderGeometry::LadderGeometry(double c) : c_(c) {
  const auto tp = turning_points(c);
  phi_minus_ = tp.phi_minus;
  phi_plus_ = tp.phi_plus;
}

double LadderGeometry::potential(double phi) const {
  const double s = std::sin(phi);
  return c_ * c_ / (s * s);
}

double LadderGeometry::gap(double phi) const {
  // sin(phi) - c via sum-to-product around the nearer turning point
  const double ref = phi >= kPi / 2.0 ? phi_plus_ : phi_minus_;
  const double diff = 2.0 * std::cos(0.5 * (phi + ref)) * std::sin(0.5 * (phi - ref));
  return diff * (std::sin(phi) + c_);
}

double LadderGeometry::potential_slope_at_caustic() const {
  return 2.0 * std::sqrt((1.0 - c_) * (1.0 + c_)) / c_;
}

double action(const LadderGeometry& geom, double phi) {
  if (!geom.allowed(phi)) throw DomainError("action: phi outside [phi-, phi+]");
  const double dist = geom.phi_plus() - phi;
  if (dist <= 0.0) return 0.0;
  // Near phi+, A ~ (2/3) sqrt(V'(phi+)) dist^{3/2}; keep the tolerance relative.
  const double scale =
      2.0 / 3.0 * std::sqrt(geom.potential_slope_at_caustic()) * dist * std::sqrt(dist);
  const double tol = std::max(1e-300, 1e-13 * std::min(1.0, scale));
  // Integrate in d = phi+ - psi. Since psi + phi- = pi - d and psi - phi- = pi - 2 phi- - d,
  // sin^2 psi - c^2 = sin(d) sin(2 phi- + d) stays accurate as d -> 0.
  const double twice_minus = 2.0 * geom.phi_minus();
  const double top = geom.phi_plus();
  auto integrand = [twice_minus, top](double d) {
    const double g = std::max(0.0, std::sin(d) * std::sin(twice_minus + d));
    return std::sqrt(g) / std::sin(top - d);
  };
  return integrate(integrand, 0.0, dist, tol, EndpointSingularity::sqrt_both);
}

double airy_arg_rho(const LadderGeometry& geom, double phi, AiryArgument variant) {
  if (!(phi > geom.phi_minus() && phi <= geom.phi_plus()))
    throw DomainError("airy_arg_rho: phi outside (phi-, phi+]");
  return std::cbrt(std::pow(rho_coefficient(variant) * action(geom, phi), 2.0));
}

double caustic_ratio(const LadderGeometry& geom, double phi, AiryArgument variant) {
  const double c = geom.c();
  if (geom.phi_plus() - phi < kCausticLimitDistance) {
    const double limit = std::pow(2.0 / c, 4.0 / 3.0) / std::cbrt((1.0 - c) * (1.0 + c));
    // rho scales as coefficient^{2/3} relative to the consistent variant.
    return limit * std::cbrt(std::pow(rho_coefficient(variant) / 1.5, 2.0));
  }
  return 4.0 * airy_arg_rho(geom, phi, variant) / geom.gap(phi);
}

double wkb_envelope(const LadderGeometry& geom, double phi) {
  if (!(phi > geom.phi_minus() && phi < geom.phi_plus()))
    throw DomainError("wkb_envelope: phi outside the open allowed interval");
  return std::sqrt(2.0 * std::sin(phi) / kPi) / std::pow(geom.gap(phi), 0.25);
}

double wkb_leading(const LadderMember& member, const LadderGeometry& geom, double phi,
                   WkbPhase phase) {
  if (!geom.allowed(phi)) throw DomainError("wkb_leading: phi outside [phi-, phi+]");
  if (phi - geom.phi_minus() < kWkbExclusion || geom.phi_plus() - phi < kWkbExclusion)
    throw ProximityError("wkb_leading: phi within " + std::to_string(kWkbExclusion) +
                         " of a turning point");
  if (phase == WkbPhase::consistent) return wkb_consistent(member, geom, phi);

  const double amp = wkb_envelope(geom, phi);
  const double arg = action(geom, phi) / member.h + kPi / 4.0;
  const bool odd = (member.N - member.m) % 2 != 0;
  return odd ? amp * std::cos(arg) : -amp * std::sin(arg);
}

double airy_leading(const LadderMember& member, const LadderGeometry& geom, double phi,
                    AiryArgument variant) {
  if (!(phi > geom.phi_plus() - kAiryWindow && phi <= geom.phi_plus() && phi > geom.phi_minus()))
    throw DomainError("airy_leading: phi outside (phi+ - " + std::to_string(kAiryWindow) +
                      ", phi+]");
  const double rho = airy_arg_rho(geom, phi, variant);
  const double h23 = std::cbrt(member.h * member.h);
  const double t = rho / h23;
  if (t > kAiryDeferArgument) return wkb_consistent(member, geom, phi);
  const double ratio = caustic_ratio(geom, phi, variant);
  return std::sqrt(std::sin(phi)) / std::sqrt(std::sqrt(h23)) * std::pow(ratio, 0.25) *
         airy(-t).ai;
}

double fit_order(std::span<const std::pair<double, double>> pairs) {
  if (pairs.size() < 3) throw InvalidData("fit_order: need at least 3 (h, err) pairs");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!(pairs[i].second > 0.0) || !std::isfinite(pairs[i].second))
      throw InvalidData("fit_order: errors must be positive");
    if (!(pairs[i].first > 0.0)) throw InvalidData("fit_order: h must be positive");
    if (i > 0 && !(pairs[i].first < pairs[i - 1].first))
      throw InvalidData("fit_order: h must be strictly decreasing");
  }
  const double n = static_cast<double>(pairs.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [h, e] : pairs) {
    sx += std::log(h);
    sy += std::log(e);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [h, e] : pairs) {
    const double dx = std::log(h) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(e) - my);
  }
  return sxy / sxx;
}

namespace {

struct ScanPoint {
  LadderMember member;
  long k;
  double phi;
};

std::vector<ScanPoint> scan_points(const Ladder& ladder, const LadderGeometry& geom,
                                   std::span<const long> ks, const PhiSpec& phis) {
  for (std::size_t i = 1; i < ks.size(); ++i)
    if (!(ks[i] > ks[i - 1])) throw InvalidParameter("caustic_scan: k list must be ascending");
  std::vector<ScanPoint> points;
  for (long k : ks) {
    const LadderMember member = ladder_member(ladder, k);
    std::vector<double> grid;
    if (const auto* list = std::get_if<std::vector<double>>(&phis)) {
      grid = *list;
    } else {
      const int n = std::get<CausticGrid>(phis).points;
      if (n < 1) throw InvalidParameter("caustic_scan: caustic grid needs at least one point");
      const double h23 = std::cbrt(member.h * member.h);
      for (int j = n; j >= 1; --j) grid.push_back(geom.phi_plus() - j * h23);
    }
    std::sort(grid.begin(), grid.end());
    for (double phi : grid) {
      if (!(phi > geom.phi_minus() && phi <= geom.phi_plus()))
        throw DomainError("caustic_scan: phi " + std::to_string(phi) +
                          " outside the allowed region");
      points.push_back({member, k, phi});
    }
  }
  return points;
}

ErrorRow evaluate_point(const ScanPoint& p, const LadderGeometry& geom) {
  ErrorRow row{p.k, p.member.N, p.member.m, p.member.h, p.phi, 0.0, kNaN, kNaN, kNaN, kNaN};
  row.exact = mode_u(p.member, p.phi).value();
  if (p.phi - geom.phi_minus() >= kWkbExclusion && geom.phi_plus() - p.phi >= kWkbExclusion)
    row.wkb = wkb_leading(p.member, geom, p.phi);
  if (p.phi > geom.phi_plus() - kAiryWindow) row.airy = airy_leading(p.member, geom, p.phi);
  return row;
}

// Sign and error bookkeeping for one formula over one member's rows.
void resolve_formula(std::span<ErrorRow> rows, double ErrorRow::*approx, double ErrorRow::*err,
                     int& sign, bool& consistent, double& max_err, double& max_exact) {
  const ErrorRow* pivot = nullptr;
  for (const auto& r : rows)
    if (!std::isnan(r.*approx) && (!pivot || std::abs(r.exact) > std::abs(pivot->exact)))
      pivot = &r;
  if (!pivot) {
    sign = 0;
    max_err = kNaN;
    max_exact = kNaN;
    return;
  }
  const double prod = pivot->*approx * pivot->exact;
  sign = prod < 0.0 ? -1 : 1;
  max_exact = std::abs(pivot->exact);
  max_err = 0.0;
  consistent = true;
  for (auto& r : rows) {
    if (std::isnan(r.*approx)) continue;
    r.*err = std::abs(r.*approx - sign * r.exact);
    max_err = std::max(max_err, r.*err);
    // Sign must agree wherever both values are substantial.
    if (std::abs(r.exact) >= 0.5 * max_exact && std::abs(r.*approx) >= 0.5 * max_exact &&
        (r.*approx * r.exact) * sign < 0.0)
      consistent = false;
  }
}

std::optional<double> fit_members(const std::vector<MemberSummary>& members,
                                  double MemberSummary::*field) {
  std::vector<std::pair<double, double>> pairs;
  for (const auto& s : members)
    if (std::isfinite(s.*field) && s.*field > 0.0) pairs.emplace_back(s.h, s.*field);
  if (pairs.size() < 3) return std::nullopt;
  return fit_order(pairs);
}

ErrorTable assemble(const LadderGeometry& geom, std::vector<ErrorRow> rows) {
  ErrorTable table;
  table.c = geom.c();
  table.rows = std::move(rows);
  std::size_t begin = 0;
  while (begin < table.rows.size()) {
    std::size_t end = begin;
    while (end < table.rows.size() && table.rows[end].k == table.rows[begin].k) ++end;
    std::span<ErrorRow> group(table.rows.data() + begin, end - begin);
    MemberSummary s{group.front().k, group.front().h};
    resolve_formula(group, &ErrorRow::wkb, &ErrorRow::err_wkb, s.sign_wkb, s.sign_consistent_wkb,
                    s.max_err_wkb, s.max_exact_wkb);
    resolve_formula(group, &ErrorRow::airy, &ErrorRow::err_airy, s.sign_airy,
                    s.sign_consistent_airy, s.max_err_airy, s.max_exact_airy);
    table.members.push_back(s);
    begin = end;
  }
  table.fitted_order_wkb = fit_members(table.members, &MemberSummary::max_err_wkb);
  table.fitted_order_airy = fit_members(table.members, &MemberSummary::max_err_airy);
  return table;
}

}  // namespace

ErrorTable caustic_scan(const Ladder& ladder, std::span<const long> ks, const PhiSpec& phis) {
  const LadderGeometry geom(ladder);
  const auto points = scan_points(ladder, geom, ks, phis);
  std::vector<ErrorRow> rows(points.size());
  parallel_for(points.size(), [&](std::size_t i) { rows[i] = evaluate_point(points[i], geom); });
  return assemble(geom, std::move(rows));
}

ErrorTable caustic_scan_serial(const Ladder& ladder, std::span<const long> ks,
                               const PhiSpec& phis) {
  const LadderGeometry geom(ladder);
  const auto points = scan_points(ladder, geom, ks, phis);
  std::vector<ErrorRow> rows;
  rows.reserve(points.size());
  for (const auto& p : points) rows.push_back(evaluate_point(p, geom));
  return assemble(geom, std::move(rows));
}

double wkb_airy_matching_gap(const LadderMember& member, const LadderGeometry& geom,
                             std::span<const double> phis, AiryArgument variant) {
  double worst = 0.0;
  for (double phi : phis) {
    const double wkb = wkb_leading(member, geom, phi);
    const double airy = airy_leading(member, geom, phi, variant);
    worst = std::max(worst, std::abs(airy - wkb) / wkb_envelope(geom, phi));
  }
  return worst;
}

double caustic_peak(const LadderMember& member, const LadderGeometry& geom, int points) {
  if (points < 2) throw InvalidParameter("caustic_peak: need at least two points");
  const double width = 6.0 * std::cbrt(member.h * member.h);
  std::vector<double> xs(points);
  std::vector<double> sines(points);
  for (int i = 0; i < points; ++i) {
    const double phi = geom.phi_plus() - width * i / (points - 1);
    if (!(phi > 0.0)) throw DomainError("caustic_peak: grid leaves (0, pi)");
    xs[i] = std::cos(phi);
    sines[i] = std::sin(phi);
  }
  const auto values = legendre_assoc_norm_batch(member.N, member.m, xs);
  double peak = 0.0;
  for (int i = 0; i < points; ++i)
    peak = std::max(peak, std::abs((values[i] * std::sqrt(sines[i])).value()));
  return peak;
}

}  // namespace caustic
