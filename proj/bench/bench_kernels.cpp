// Serial reference vs OpenMP kernels: batch Legendre evaluation, measure
// weights, and a caustic scan. Prints wall times and checks that both paths
// agree bit for bit.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "caustic/legendre.hpp"
#include "caustic/measures.hpp"
#include "caustic/parallel.hpp"
#include "caustic/semiclassics.hpp"

namespace {

template <class F>
double seconds(F&& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

// Equal, or both NaN (rows outside an approximation's window).
bool same_value(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

void report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s serial %9.4f s   openmp %9.4f s   speedup %5.2fx   %s\n", name, serial,
              parallel, serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace caustic;
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("workers: %d\n", worker_count());
  bool ok = true;

  {
    std::vector<double> xs(20000);
    for (std::size_t i = 0; i < xs.size(); ++i)
      xs[i] = std::cos(std::numbers::pi * (i + 0.5) / xs.size());
    std::vector<ScaledValue> a, b;
    const double ts = seconds([&] { a = legendre_assoc_norm_batch_serial(2000, 700, xs); }, reps);
    const double tp = seconds([&] { b = legendre_assoc_norm_batch(2000, 700, xs); }, reps);
    report("legendre batch N=2000", ts, tp, a == b);
    ok = ok && a == b;
  }
  {
    EmpiricalMeasure a, b;
    const double ts = seconds([&] { a = empirical_measure_serial(4000, 0.8); }, reps);
    const double tp = seconds([&] { b = empirical_measure(4000, 0.8); }, reps);
    bool same = a.atoms.size() == b.atoms.size();
    for (std::size_t i = 0; same && i < a.atoms.size(); ++i)
      same = a.atoms[i].w == b.atoms[i].w && a.atoms[i].t == b.atoms[i].t;
    report("empirical measure N=4000", ts, tp, same);
    ok = ok && same;
  }
  {
    const Ladder ladder(1, 1);
    const std::vector<long> ks = {31, 63, 127, 255, 511};
    ErrorTable a, b;
    const double ts =
        seconds([&] { a = caustic_scan_serial(ladder, ks, CausticGrid{16}); }, reps);
    const double tp = seconds([&] { b = caustic_scan(ladder, ks, CausticGrid{16}); }, reps);
    bool same = a.rows.size() == b.rows.size();
    for (std::size_t i = 0; same && i < a.rows.size(); ++i)
      same = same_value(a.rows[i].exact, b.rows[i].exact) &&
             same_value(a.rows[i].wkb, b.rows[i].wkb) &&
             same_value(a.rows[i].airy, b.rows[i].airy) &&
             same_value(a.rows[i].err_wkb, b.rows[i].err_wkb) &&
             same_value(a.rows[i].err_airy, b.rows[i].err_airy);
    report("caustic scan 5x16", ts, tp, same);
    ok = ok && same;
  }
  return ok ? 0 : 1;
}
