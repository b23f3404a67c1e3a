#include "caustic/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "caustic/errors.hpp"
#include "caustic/legendre.hpp"
#include "caustic/measures.hpp"
#include "caustic/parallel.hpp"
#include "caustic/selftest.hpp"
#include "caustic/semiclassics.hpp"
#include "caustic/specfun.hpp"

namespace caustic::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

namespace {

constexpr double kPi = std::numbers::pi;

// Minimal ordered JSON emitter; numbers use format_number, NaN becomes null.
class JsonWriter {
public:
  explicit JsonWriter(std::ostream& os) : os_(os) {}

  JsonWriter& begin_object() { return open('{'); }
  JsonWriter& end_object() { return close('}'); }
  JsonWriter& begin_array() { return open('['); }
  JsonWriter& end_array() { return close(']'); }

  JsonWriter& key(const std::string& k) {
    separator();
    string(k);
    os_ << ": ";
    after_key_ = true;
    return *this;
  }
  JsonWriter& value(double v) {
    separator();
    if (std::isfinite(v))
      os_ << format_number(v);
    else
      os_ << "null";
    return *this;
  }
  JsonWriter& value(std::optional<double> v) { return v ? value(*v) : null(); }
  JsonWriter& value(long v) {
    separator();
    os_ << v;
    return *this;
  }
  JsonWriter& value(int v) { return value(static_cast<long>(v)); }
  JsonWriter& value(bool v) {
    separator();
    os_ << (v ? "true" : "false");
    return *this;
  }
  JsonWriter& value(const std::string& v) {
    separator();
    string(v);
    return *this;
  }
  JsonWriter& value(const char* v) { return value(std::string(v)); }
  JsonWriter& null() {
    separator();
    os_ << "null";
    return *this;
  }
  void finish() { os_ << '\n'; }

private:
  JsonWriter& open(char c) {
    separator();
    os_ << c;
    first_.push_back(true);
    return *this;
  }
  JsonWriter& close(char c) {
    const bool empty = first_.back();
    first_.pop_back();
    if (!empty) newline();
    os_ << c;
    return *this;
  }
  void separator() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (first_.empty()) return;
    if (!first_.back()) os_ << ',';
    first_.back() = false;
    newline();
  }
  void newline() {
    os_ << '\n';
    for (std::size_t i = 0; i < first_.size(); ++i) os_ << "  ";
  }
  void string(const std::string& s) {
    os_ << '"';
    for (char ch : s) {
      if (ch == '"' || ch == '\\') os_ << '\\';
      os_ << ch;
    }
    os_ << '"';
  }

  std::ostream& os_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

struct Common {
  std::string format = "csv";
  std::string out_path;
  int threads = 0;
};

void add_common(CLI::App* app, Common& common) {
  app->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", common.out_path, "Output file (default: standard output)");
  app->add_option("--threads", common.threads, "Worker count (default: OpenMP default)")
      ->check(CLI::NonNegativeNumber);
}

// Writes to --out or to `fallback`; output is composed in memory first so a
// failing command leaves no partial file.
void emit(const Common& common, std::ostream& fallback, const std::string& text) {
  if (common.out_path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(common.out_path, std::ios::binary);
  if (!file) throw InvalidParameter("cannot open output file " + common.out_path);
  file << text;
}

std::string csv_cell(const ScaledValue& v, bool with_value) {
  std::string s = format_number(v.mantissa()) + "," + std::to_string(v.exp10()) + ",";
  if (with_value) {
    const auto d = v.to_double();
    if (d) s += format_number(*d);
  }
  return s;
}

// --- legendre -------------------------------------------------------------

struct LegendreArgs {
  long N = -1;
  long m = -1;
  std::optional<double> x;
  std::optional<double> phi;
};

std::string cmd_legendre(const LegendreArgs& a, const Common& common) {
  if (a.m > a.N) throw DomainError("order exceeds degree");
  if (a.x.has_value() == a.phi.has_value())
    throw InvalidParameter("exactly one of --x or --phi is required");
  const double x = a.x ? *a.x : std::cos(*a.phi);
  const ScaledValue p = legendre_assoc_norm(a.N, a.m, x);
  std::optional<ScaledValue> u;
  if (a.phi) u = mode_u(make_member(a.N, a.m), *a.phi);

  std::ostringstream os;
  if (common.format == "csv") {
    os << "quantity,N,m,x,phi,mantissa,exp10,value\n";
    const std::string phi_cell = a.phi ? format_number(*a.phi) : "";
    os << "P," << a.N << ',' << a.m << ',' << format_number(x) << ',' << phi_cell << ','
       << csv_cell(p, true) << '\n';
    if (u)
      os << "u," << a.N << ',' << a.m << ',' << format_number(x) << ',' << phi_cell << ','
         << csv_cell(*u, true) << '\n';
    return os.str();
  }
  JsonWriter w(os);
  auto scaled = [&w](const char* name, const ScaledValue& v) {
    w.key(name).begin_object();
    w.key("mantissa").value(v.mantissa());
    w.key("exp10").value(static_cast<long>(v.exp10()));
    w.key("value").value(v.to_double());
    w.end_object();
  };
  w.begin_object();
  w.key("N").value(a.N);
  w.key("m").value(a.m);
  w.key("x").value(x);
  if (a.phi) w.key("phi").value(*a.phi);
  scaled("P", p);
  if (u) scaled("u", *u);
  w.end_object();
  w.finish();
  return os.str();
}

// --- scan -----------------------------------------------------------------

struct ScanArgs {
  long m0 = 1;
  long N0 = 1;
  std::vector<long> ks;
  std::vector<double> phis;
  int caustic = 0;
};

std::string cmd_scan(const ScanArgs& a, const Common& common) {
  if (a.ks.empty()) throw InvalidParameter("at least one --k is required");
  if (a.phis.empty() == (a.caustic == 0))
    throw InvalidParameter("exactly one of --phi or --caustic is required");
  const Ladder ladder(a.m0, a.N0);
  const PhiSpec spec = a.caustic > 0 ? PhiSpec{CausticGrid{a.caustic}} : PhiSpec{a.phis};
  const ErrorTable table = caustic_scan(ladder, a.ks, spec);
  for (const auto& r : table.rows)
    if (!std::isfinite(r.exact)) throw NumericalError("non-finite exact value in scan");

  std::ostringstream os;
  if (common.format == "csv") {
    os << "k,N,m,h,phi,exact,wkb,airy,err_wkb,err_airy\n";
    for (const auto& r : table.rows)
      os << r.k << ',' << r.N << ',' << r.m << ',' << format_number(r.h) << ','
         << format_number(r.phi) << ',' << format_number(r.exact) << ',' << format_number(r.wkb)
         << ',' << format_number(r.airy) << ',' << format_number(r.err_wkb) << ','
         << format_number(r.err_airy) << '\n';
    return os.str();
  }
  JsonWriter w(os);
  w.begin_object();
  w.key("m0").value(a.m0);
  w.key("N0").value(a.N0);
  w.key("c").value(table.c);
  w.key("fitted_order_wkb").value(table.fitted_order_wkb);
  w.key("fitted_order_airy").value(table.fitted_order_airy);
  w.key("members").begin_array();
  for (const auto& s : table.members) {
    w.begin_object();
    w.key("k").value(s.k);
    w.key("h").value(s.h);
    w.key("sign_wkb").value(s.sign_wkb);
    w.key("sign_airy").value(s.sign_airy);
    w.key("sign_consistent_wkb").value(s.sign_consistent_wkb);
    w.key("sign_consistent_airy").value(s.sign_consistent_airy);
    w.key("max_err_wkb").value(s.max_err_wkb);
    w.key("max_err_airy").value(s.max_err_airy);
    w.key("rel_err_wkb").value(s.max_err_wkb / s.max_exact_wkb);
    w.key("rel_err_airy").value(s.max_err_airy / s.max_exact_airy);
    w.end_object();
  }
  w.end_array();
  w.key("rows").begin_array();
  for (const auto& r : table.rows) {
    w.begin_object();
    w.key("k").value(r.k);
    w.key("N").value(r.N);
    w.key("m").value(r.m);
    w.key("h").value(r.h);
    w.key("phi").value(r.phi);
    w.key("exact").value(r.exact);
    w.key("wkb").value(r.wkb);
    w.key("airy").value(r.airy);
    w.key("err_wkb").value(r.err_wkb);
    w.key("err_airy").value(r.err_airy);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  w.finish();
  return os.str();
}

// --- measure --------------------------------------------------------------

struct TestFunction {
  std::string label;
  std::function<double(double)> f;
};

TestFunction parse_function(const std::string& spec) {
  if (spec == "one") return {"f:one", [](double) { return 1.0; }};
  if (spec == "t2") return {"f:t2", [](double t) { return t * t; }};
  if (spec == "t4") return {"f:t4", [](double t) { return t * t * t * t; }};
  if (spec.rfind("cos:", 0) == 0) {
    double s = 0.0;
    try {
      std::size_t used = 0;
      s = std::stod(spec.substr(4), &used);
      if (used != spec.size() - 4) throw std::invalid_argument(spec);
    } catch (const std::exception&) {
      throw InvalidParameter("bad --f value " + spec);
    }
    if (!std::isfinite(s)) throw InvalidParameter("bad --f value " + spec);
    return {"f:" + spec, [s](double t) { return std::cos(s * t); }};
  }
  throw InvalidParameter("unknown --f value " + spec + " (one, t2, t4, cos:<s>)");
}

struct MeasureArgs {
  std::vector<long> Ns;
  double c0 = 0.0;
  std::vector<std::string> fs;
  std::vector<double> ss;
};

struct MeasureRow {
  long N;
  std::string item;
  double empirical;
  double limit;
  double gap;
};

bool decreasing_trend(const std::vector<double>& gaps) {
  if (gaps.size() < 2) return false;
  int violations = 0;
  for (std::size_t i = 1; i < gaps.size(); ++i)
    if (gaps[i] > gaps[i - 1]) ++violations;
  return violations <= 1 && gaps.back() < gaps.front();
}

std::string cmd_measure(const MeasureArgs& a, const Common& common) {
  if (a.Ns.empty()) throw InvalidParameter("at least one --N is required");
  if (a.fs.empty() && a.ss.empty()) throw InvalidParameter("at least one --f or --s is required");
  std::vector<TestFunction> fns;
  for (const auto& spec : a.fs) fns.push_back(parse_function(spec));
  std::vector<double> limits;
  for (const auto& fn : fns) limits.push_back(arcsine_limit(a.c0, fn.f));

  std::vector<MeasureRow> rows;
  for (long N : a.Ns) {
    const auto mu = empirical_measure(N, a.c0);
    for (std::size_t i = 0; i < fns.size(); ++i) {
      const double e = integrate_against(mu, fns[i].f);
      rows.push_back({N, fns[i].label, e, limits[i], std::abs(e - limits[i])});
    }
    for (double s : a.ss) {
      const std::string tag = format_number(s);
      const double direct = char_fn_direct(mu, s).real();
      const double addition = char_fn_addition(N, a.c0, s);
      const double bessel = bessel_j0(a.c0 * s) / (2.0 * kPi);
      rows.push_back({N, "cf:" + tag, direct, addition, std::abs(direct - addition)});
      rows.push_back({N, "cf_limit:" + tag, addition, bessel, std::abs(addition - bessel)});
    }
  }
  for (const auto& r : rows)
    if (!std::isfinite(r.empirical) || !std::isfinite(r.limit))
      throw NumericalError("non-finite value in measure report");

  std::ostringstream os;
  if (common.format == "csv") {
    os << "N,item,empirical,limit,gap\n";
    for (const auto& r : rows)
      os << r.N << ',' << r.item << ',' << format_number(r.empirical) << ','
         << format_number(r.limit) << ',' << format_number(r.gap) << '\n';
    return os.str();
  }
  // Items in first-appearance order.
  std::vector<std::string> items;
  for (const auto& r : rows)
    if (std::find(items.begin(), items.end(), r.item) == items.end()) items.push_back(r.item);

  JsonWriter w(os);
  w.begin_object();
  w.key("c0").value(a.c0);
  w.key("rows").begin_array();
  for (const auto& r : rows) {
    w.begin_object();
    w.key("N").value(r.N);
    w.key("item").value(r.item);
    w.key("empirical").value(r.empirical);
    w.key("limit").value(r.limit);
    w.key("gap").value(r.gap);
    w.end_object();
  }
  w.end_array();
  w.key("trends").begin_array();
  for (const auto& item : items) {
    std::vector<double> gaps;
    for (const auto& r : rows)
      if (r.item == item) gaps.push_back(r.gap);
    w.begin_object();
    w.key("item").value(item);
    w.key("max_gap").value(*std::max_element(gaps.begin(), gaps.end()));
    w.key("final_gap").value(gaps.back());
    // cf rows compare two exact routes; no trend is expected there
    if (item.rfind("cf:", 0) == 0)
      w.key("decreasing").null();
    else
      w.key("decreasing").value(decreasing_trend(gaps));
    w.end_object();
  }
  w.end_array();
  w.end_object();
  w.finish();
  return os.str();
}

// --- selftest ---------------------------------------------------------------

std::string cmd_selftest(bool inject_fault, bool& all_passed) {
  const auto results = run_selftest({inject_fault});
  all_passed = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  std::ostringstream os;
  JsonWriter w(os);
  w.begin_object();
  w.key("passed").value(all_passed);
  w.key("checks").begin_array();
  for (const auto& r : results) {
    w.begin_object();
    w.key("name").value(r.name);
    w.key("passed").value(r.passed);
    w.key("value").value(r.value);
    w.key("relation").value(r.relation);
    w.key("threshold").value(r.threshold);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  w.finish();
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ladder sequences of spherical harmonics: exact values, WKB/Airy asymptotics, "
               "empirical measures"};
  app.name("caustic");
  app.require_subcommand(1);

  Common common;
  LegendreArgs leg;
  auto* legendre = app.add_subcommand("legendre", "Normalized associated Legendre value");
  legendre->add_option("--N", leg.N, "Degree")->required();
  legendre->add_option("--m", leg.m, "Order")->required();
  auto* xopt = legendre->add_option("--x", leg.x, "Argument in [-1, 1]");
  auto* phiopt = legendre->add_option("--phi", leg.phi, "Colatitude in (0, pi); also reports u_h");
  xopt->excludes(phiopt);
  add_common(legendre, common);

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "Exact vs WKB/Airy along a ladder");
  scan->add_option("--m0", scan_args.m0, "Ladder base order")->required();
  scan->add_option("--N0", scan_args.N0, "Ladder base degree")->required();
  scan->add_option("--k", scan_args.ks, "Ladder index (repeatable)")->required();
  auto* scan_phi = scan->add_option("--phi", scan_args.phis, "Latitude (repeatable)");
  auto* scan_caustic =
      scan->add_option("--caustic", scan_args.caustic, "n points phi+ - j h^{2/3}, j = 1..n")
          ->check(CLI::PositiveNumber);
  scan_phi->excludes(scan_caustic);
  add_common(scan, common);

  MeasureArgs meas;
  auto* measure = app.add_subcommand("measure", "Empirical measures and their arcsine limit");
  measure->add_option("--N", meas.Ns, "Degree (repeatable)")->required();
  measure->add_option("--c0", meas.c0, "Latitude parameter in (0, 1)")->required();
  measure->add_option("--f", meas.fs, "Test function: one, t2, t4, cos:<s> (repeatable)");
  measure->add_option("--s", meas.ss, "Characteristic-function argument (repeatable)");
  add_common(measure, common);

  bool inject_fault = false;
  auto* selftest = app.add_subcommand("selftest", "Run the invariant suite");
  selftest->add_flag("--inject-fault", inject_fault)->group("");
  selftest->add_option("--out", common.out_path, "Output file (default: standard output)");
  selftest->add_option("--threads", common.threads, "Worker count")->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }

  // Worker count applies to this invocation only.
  struct WorkerScope {
    bool active;
    ~WorkerScope() {
      if (active) set_worker_count(0);
    }
  } scope{common.threads > 0};
  try {
    if (common.threads > 0) set_worker_count(common.threads);
    if (legendre->parsed()) {
      emit(common, out, cmd_legendre(leg, common));
    } else if (scan->parsed()) {
      emit(common, out, cmd_scan(scan_args, common));
    } else if (measure->parsed()) {
      emit(common, out, cmd_measure(meas, common));
    } else if (selftest->parsed()) {
      bool passed = false;
      emit(common, out, cmd_selftest(inject_fault, passed));
      return passed ? kSuccess : kSelftestFailure;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kSuccess;
}

}  // namespace caustic::cli
