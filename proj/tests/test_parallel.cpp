#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "pwind/conditions.hpp"
#include "pwind/errors.hpp"
#include "pwind/parallel.hpp"
#include "pwind/poincare.hpp"

using namespace pwind;

// The OpenMP kernels must produce bit-identical results against the serial
// reference implementation: every slot is computed independently and all
// reductions run serially afterwards.

TEST_CASE("batch_map: serial and OpenMP agree bitwise") {
  std::vector<double> xs(1000);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = 0.01 * static_cast<double>(i);
  auto f = [](double x) { return std::sin(x) * std::exp(-x) + std::cos(3.0 * x); };
  const std::vector<double> a = batch_map(xs, ExecMode::Serial, f);
  const std::vector<double> b = batch_map(xs, ExecMode::OpenMP, f);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("exceptions from parallel work items rethrow deterministically") {
  std::vector<int> xs(64);
  for (int i = 0; i < 64; ++i) xs[i] = i;
  auto boom = [](int i) -> int {
    if (i == 17 || i == 40) throw InputError("boom at " + std::to_string(i));
    return i;
  };
  for (ExecMode mode : {ExecMode::Serial, ExecMode::OpenMP}) {
    try {
      batch_map(xs, mode, boom);
      FAIL("expected InputError");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()) == "boom at 17");  // lowest index wins
    }
  }
}

TEST_CASE("winding of a displacement curve agrees across exec modes") {
  const ProblemSpec prob{PlanarField::saturating_radial(1.0),
                         Forcing(1.0, {0.5, 0.0}, {{1, {0.3, 0.0}, {0.0, 0.3}}})};
  const ProblemSpec red = reduce_to_zero_mean(prob);

  auto run = [&](ExecMode mode) {
    WindingConfig wc;
    wc.exec = mode;
    wc.keep_samples = true;
    DisplacementCurve curve(red, 8.0, CurveNormalization::Raw);
    return winding_number(curve.as_oracle(mode), {0.0, 0.0}, wc);
  };
  const WindingResult s = run(ExecMode::Serial);
  const WindingResult p = run(ExecMode::OpenMP);
  CHECK(s.winding == p.winding);
  CHECK(s.samples_used == p.samples_used);
  CHECK(s.min_pole_distance == p.min_pole_distance);
  CHECK(s.max_step_turn == p.max_step_turn);
  REQUIRE(s.samples.size() == p.samples.size());
  for (std::size_t i = 0; i < s.samples.size(); ++i) {
    CHECK(s.samples[i].first == p.samples[i].first);
    CHECK(s.samples[i].second == p.samples[i].second);
  }
}

TEST_CASE("radial ladder agrees across exec modes") {
  const PlanarField field = PlanarField::saturating_radial(1.0);
  ConditionsConfig cfg;
  cfg.exec = ExecMode::Serial;
  const RadialLimitEstimate a = radial_limit_curve(field, LimitNormalization::Raw, {}, cfg);
  cfg.exec = ExecMode::OpenMP;
  const RadialLimitEstimate b = radial_limit_curve(field, LimitNormalization::Raw, {}, cfg);
  REQUIRE(a.defects.size() == b.defects.size());
  for (std::size_t i = 0; i < a.defects.size(); ++i) CHECK(a.defects[i] == b.defects[i]);
  for (std::size_t i = 0; i < a.values.size(); ++i)
    for (std::size_t j = 0; j < a.values[i].size(); ++j) CHECK(a.values[i][j] == b.values[i][j]);
}

TEST_CASE("displacement curve cache is coherent") {
  const ProblemSpec prob{PlanarField::saturating_radial(1.0), Forcing(1.0, {0.5, 0.0})};
  DisplacementCurve curve(prob, 4.0, CurveNormalization::Raw);
  const Point2 first = curve(1.234);
  const Point2 second = curve(1.234);  // cache hit must be identical
  CHECK(first == second);
  const CurveOracle oracle = curve.as_oracle();
  const std::vector<Point2> batch = oracle.batch({1.234, 2.5, 1.234}, ExecMode::OpenMP);
  CHECK(batch[0] == first);
  CHECK(batch[2] == first);
}
