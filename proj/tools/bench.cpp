// Benchmark comparing the serial reference kernels against the OpenMP ones on
// the two hot paths: batch displacement-curve sampling (independent ODE solves
// per theta) and the full fta pipeline (subdivision boundary windings).

#include <chrono>
#include <cstdio>

#include "pwind/parallel.hpp"
#include "pwind/solver.hpp"

using namespace pwind;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double bench_curve(ExecMode mode) {
  const ProblemSpec prob{PlanarField::saturating_radial(1.0),
                         Forcing(1.0, {0.5, 0.0}, {{1, {0.3, 0.0}, {0.0, 0.3}}})};
  DisplacementCurve curve(reduce_to_zero_mean(prob), 8.0, CurveNormalization::Raw);
  std::vector<double> thetas(512);
  for (std::size_t i = 0; i < thetas.size(); ++i) thetas[i] = kTwoPi * i / thetas.size();
  const auto t0 = Clock::now();
  const auto pts = curve.as_oracle(mode).batch(thetas, mode);
  (void)pts;
  return ms_since(t0);
}

double bench_fta(ExecMode mode) {
  SolverConfig cfg;
  cfg.exec = mode;
  cfg.winding.exec = mode;
  cfg.radius.exec = mode;
  cfg.conditions.exec = mode;
  const Polynomial f{{{0.0, 0.0}, {-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}};  // z^3 - z
  const auto t0 = Clock::now();
  const FtaResult res = fta_roots(f, cfg);
  (void)res;
  return ms_since(t0);
}

}  // namespace

int main() {
  std::printf("pwind benchmark (max threads: %d)\n", max_threads());
  std::printf("%-28s %12s %12s %9s\n", "workload", "serial [ms]", "openmp [ms]", "speedup");

  // Warm-up run so both modes start from equal caches.
  bench_curve(ExecMode::Serial);

  const double c_s = bench_curve(ExecMode::Serial);
  const double c_p = bench_curve(ExecMode::OpenMP);
  std::printf("%-28s %12.2f %12.2f %8.2fx\n", "displacement curve (512)", c_s, c_p, c_s / c_p);

  const double f_s = bench_fta(ExecMode::Serial);
  const double f_p = bench_fta(ExecMode::OpenMP);
  std::printf("%-28s %12.2f %12.2f %8.2fx\n", "fta z^3 - z", f_s, f_p, f_s / f_p);
  return 0;
}
