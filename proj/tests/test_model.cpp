#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pwind/errors.hpp"
#include "pwind/integrate.hpp"
#include "pwind/io.hpp"
#include "pwind/problem.hpp"

using namespace pwind;

namespace {

Polynomial poly(std::initializer_list<std::complex<double>> coeffs) {
  return Polynomial{std::vector<std::complex<double>>(coeffs)};
}

Forcing benchmark_forcing() {
  return Forcing(1.0, {0.5, 0.0}, {{1, {0.3, 0.0}, {0.0, 0.3}}});
}

}  // namespace

TEST_CASE("eval_field: conjugate polynomial and library variants") {
  const PlanarField sq = PlanarField::conjugate_polynomial(poly({0.0, 0.0, 1.0}));  // f(z) = z^2
  const Point2 v = eval_field(sq, {1.0, 1.0});                                      // f(1 - i) = -2i
  CHECK(v.x == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(v.y == doctest::Approx(-2.0).epsilon(1e-14));

  const PlanarField sat = PlanarField::saturating_radial(1.0);
  const Point2 s = sat(Point2{3.0, 4.0});  // |u| = 5, u / 6
  CHECK(s.x == doctest::Approx(0.5));
  CHECK(s.y == doctest::Approx(2.0 / 3.0));

  const PlanarField conj = PlanarField::conjugate_polynomial(poly({0.0, 1.0}));  // f(z) = z
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const Point2 u = oracles::random_in_disk(rng, 3.0);
    const Point2 g = conj(u);
    CHECK(g.x == doctest::Approx(u.x).epsilon(1e-15));
    CHECK(g.y == doctest::Approx(-u.y).epsilon(1e-15));
  }
}

TEST_CASE("eval_field: overflow and bad input") {
  const PlanarField q =
      PlanarField::conjugate_polynomial(poly({0.0, 0.0, 0.0, 0.0, 0.0, 1.0}));  // degree 5
  CHECK_THROWS_AS(q(Point2{1.0e70, 0.0}), FieldOverflowError);
  CHECK_THROWS_AS(q(Point2{std::nan(""), 0.0}), InputError);
}

TEST_CASE("mean_forcing returns the constant coefficient exactly") {
  CHECK(mean_forcing(benchmark_forcing()) == Point2{0.5, 0.0});
  CHECK(mean_forcing(Forcing::zero(1.0)) == Point2{0.0, 0.0});
  const Forcing circ(kTwoPi, {0.0, 0.0}, {{1, {1.0, 0.0}, {0.0, 1.0}}});  // (cos t, sin t)
  CHECK(mean_forcing(circ) == Point2{0.0, 0.0});
}

TEST_CASE("forcing: closed-form L2 norm and quadrature oracle") {
  CHECK(Forcing(1.0, {1.0, 0.0}).l2_norm() == doctest::Approx(1.0));
  const Forcing cosf(1.0, {0.0, 0.0}, {{1, {1.0, 0.0}, {0.0, 0.0}}});
  CHECK(cosf.l2_norm() == doctest::Approx(std::sqrt(0.5)));

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    const double T = 0.5 + (trial + 1) * 0.75;
    std::vector<Forcing::Harmonic> hs;
    for (int k = 1; k <= 3; ++k)
      hs.push_back({k, {unif(rng), unif(rng)}, {unif(rng), unif(rng)}});
    const Forcing p(T, {unif(rng), unif(rng)}, hs);

    const double quad_sq = oracles::simpson([&](double t) { return p(t).norm_sq(); }, 0.0, T);
    CHECK(p.l2_norm() == doctest::Approx(std::sqrt(quad_sq)).epsilon(1e-10));
    const double mean_x = oracles::simpson([&](double t) { return p(t).x; }, 0.0, T) / T;
    const double mean_y = oracles::simpson([&](double t) { return p(t).y; }, 0.0, T) / T;
    CHECK(p.mean().x == doctest::Approx(mean_x).epsilon(1e-10));
    CHECK(p.mean().y == doctest::Approx(mean_y).epsilon(1e-10));

    // periodicity by construction
    for (double t : {0.1, 0.37, 1.9}) CHECK(distance(p(t + T), p(t)) < 1e-12 * (1.0 + p(t).norm()));
  }
}

TEST_CASE("forcing: input validation") {
  CHECK_THROWS_AS(Forcing(0.0, {0.0, 0.0}), InputError);
  CHECK_THROWS_AS(Forcing(1.0, {0.0, 0.0}, {{0, {1.0, 0.0}, {0.0, 0.0}}}), InputError);
  CHECK_THROWS_AS(Forcing(1.0, {0.0, 0.0}, {{2, {1.0, 0.0}, {}}, {2, {}, {1.0, 0.0}}}), InputError);
}

TEST_CASE("reduce_to_zero_mean: field shift and identity case") {
  const ProblemSpec prob{PlanarField::saturating_radial(1.0), benchmark_forcing()};
  const ProblemSpec red = reduce_to_zero_mean(prob);
  CHECK(red.forcing.mean() == Point2{0.0, 0.0});
  const Point2 u{0.3, -0.7};
  CHECK(distance(red.field(u), prob.field(u) + Point2{0.5, 0.0}) < 1e-15);

  const ProblemSpec zm{PlanarField::saturating_radial(1.0), benchmark_forcing().zero_mean_part()};
  const ProblemSpec same = reduce_to_zero_mean(zm);
  CHECK(same.forcing.mean() == Point2{0.0, 0.0});
  CHECK(distance(same.field(u), zm.field(u)) == 0.0);
}

TEST_CASE("reduce_to_zero_mean preserves trajectories") {
  const ProblemSpec prob{PlanarField::saturating_radial(1.0), benchmark_forcing()};
  const ProblemSpec red = reduce_to_zero_mean(prob);
  const Point2 u0{0.2, 0.4};

  // Fixed-step grids coincide, so states compare pointwise.
  IntegratorConfig rk4;
  rk4.method = IntegratorConfig::Method::RK4;
  rk4.step = 1e-3;
  const Trajectory a = integrate(prob, u0, rk4);
  const Trajectory b = integrate(red, u0, rk4);
  REQUIRE(a.times.size() == b.times.size());
  for (std::size_t i = 0; i < a.times.size(); ++i)
    CHECK(distance(a.states[i], b.states[i]) < 1e-9);

  IntegratorConfig adaptive;
  const Point2 ea = flow_endpoint(make_rhs(prob), 1.0, u0, adaptive);
  const Point2 eb = flow_endpoint(make_rhs(red), 1.0, u0, adaptive);
  CHECK(distance(ea, eb) < 10.0 * adaptive.abs_tol);
}

TEST_CASE("to_planar: fields, potentials, finite-difference oracle") {
  const PlanarField lin = to_planar({{0.0, 0.0}, {1.0, 0.0}});  // f(z) = z
  CHECK(distance(lin(Point2{2.0, 3.0}), Point2{2.0, -3.0}) < 1e-15);
  CHECK(lin.potential(Point2{1.0, 2.0}) == doctest::Approx((1.0 - 4.0) / 2.0));

  const PlanarField sq = to_planar({{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});  // f(z) = z^2
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const Point2 u = oracles::random_in_disk(rng, 2.0);
    const Point2 g = sq(u);
    CHECK(g.x == doctest::Approx(u.x * u.x - u.y * u.y).epsilon(1e-13));
    CHECK(g.y == doctest::Approx(-2.0 * u.x * u.y).epsilon(1e-13));
  }

  // Independent FD check of the potential metadata at 100 random points.
  const PlanarField cubic = to_planar({{1.0, 0.5}, {-2.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}});
  auto pot = [&](Point2 u) { return cubic.potential(u); };
  std::mt19937_64 rng2(1234);
  for (int i = 0; i < 100; ++i) {
    const Point2 u = oracles::random_in_disk(rng2, 2.0);
    const Point2 fd = oracles::fd_gradient(pot, u);
    const Point2 g = cubic(u);
    CHECK((g - fd).norm() / std::max(1.0, g.norm()) < 1e-6);
  }

  CHECK_THROWS_AS(to_planar({{1.0, 0.0}}), InputError);                // degree 0
  CHECK_THROWS_AS(to_planar({{1.0, 0.0}, {0.0, 0.0}}), InputError);    // zero leading coeff
}

TEST_CASE("library potentials match their fields (FD oracle)") {
  const PlanarField sat = PlanarField::saturating_radial(0.8);
  const PlanarField arct = PlanarField::component_arctan(1.5, -2.0);
  const PlanarField shifted = sat.shifted_by({0.3, -0.1});
  std::mt19937_64 rng(99);
  for (int i = 0; i < 50; ++i) {
    const Point2 u = oracles::random_in_disk(rng, 2.0) + Point2{0.5, 0.5};
    for (const PlanarField* f : {&sat, &arct, &shifted}) {
      const Point2 fd = oracles::fd_gradient([&](Point2 v) { return f->potential(v); }, u);
      CHECK((((*f)(u)) - fd).norm() / std::max(1.0, (*f)(u).norm()) < 1e-6);
    }
  }
}

TEST_CASE("build_truncated_field: quartic example") {
  const PlanarField grad = PlanarField::radial_power_gradient(4.0);
  const double R = 5.0;
  const PlanarField trunc = build_truncated_field(grad, R);

  // |g_hat| plateaus at ~1 far out instead of growing like |u|^3.
  double plateau_max = 0.0;
  for (double r = 10.0; r <= 1000.0; r *= 1.3)
    for (int j = 0; j < 16; ++j)
      plateau_max = std::max(plateau_max, trunc(unit_at(kTwoPi * j / 16.0) * r).norm());
  CHECK(plateau_max < 1.01);
  CHECK(trunc(Point2{1000.0, 0.0}).norm() == doctest::Approx(1.0).epsilon(1e-3));

  // Direction preservation at 100 random points.
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const Point2 u = oracles::random_in_disk(rng, 50.0);
    const Point2 g = grad(u);
    const Point2 h = trunc(u);
    if (g.norm() < 1e-12) continue;
    const Point2 du = g / g.norm(), dh = h / h.norm();
    CHECK(distance(du, dh) < 1e-12);
  }

  // Exact equality inside |G| <= R.
  const double r_inner = 0.99 * std::pow(4.0 * R, 0.25);
  const Point2 ui = unit_at(0.7) * r_inner;
  CHECK(trunc(ui) == grad(ui));

  // Continuity across both seams.
  for (double seam : {std::pow(4.0 * R, 0.25), std::pow(8.0 * R, 0.25)}) {
    const Point2 lo = unit_at(1.1) * (seam * (1.0 - 1e-10));
    const Point2 hi = unit_at(1.1) * (seam * (1.0 + 1e-10));
    CHECK(distance(trunc(lo), trunc(hi)) < 1e-8);
  }
}

TEST_CASE("build_truncated_field: control validation errors") {
  PlanarField::GradientOracles bad_xi;
  bad_xi.potential = [](Point2 u) { return 0.5 * u.norm_sq(); };
  bad_xi.gradient = [](Point2 u) { return u; };
  bad_xi.control = [](double) { return -1.0; };
  const PlanarField f1 = PlanarField::gradient(bad_xi);
  CHECK_THROWS_AS(build_truncated_field(f1, 1.0), ControlError);

  PlanarField::GradientOracles small_xi = bad_xi;
  small_xi.control = [](double) { return 0.1; };
  const PlanarField f2 = PlanarField::gradient(small_xi);
  CHECK_THROWS_WITH_AS(build_truncated_field(f2, 1.0), doctest::Contains("violated at u="), ControlError);

  CHECK_THROWS_AS(build_truncated_field(f2, -1.0), InputError);
}

TEST_CASE("field_sup_norm per variant") {
  CHECK(field_sup_norm(PlanarField::saturating_radial(1.0)).value == doctest::Approx(1.0));
  CHECK_FALSE(field_sup_norm(to_planar({{0.0, 0.0}, {1.0, 0.0}})).bounded());

  const SupNorm arct = field_sup_norm(PlanarField::component_arctan(2.0, 1.0));
  CHECK(arct.value == doctest::Approx(kPi / 2.0 * std::hypot(2.0, 1.0)));

  const SupNorm shifted = field_sup_norm(PlanarField::saturating_radial(1.0).shifted_by({0.5, 0.0}));
  CHECK(shifted.value == doctest::Approx(1.5));

  // Truncated estimate stable under grid refinement.
  const PlanarField grad = PlanarField::radial_power_gradient(4.0);
  TruncationOptions coarse;
  coarse.grid_radii = 64;
  coarse.grid_angles = 64;
  const double est_coarse = *field_sup_norm(build_truncated_field(grad, 5.0, coarse)).value;
  const double est_default = *field_sup_norm(build_truncated_field(grad, 5.0)).value;
  CHECK(std::abs(est_coarse - est_default) / est_default < 0.05);
}

TEST_CASE("gradient consistency check rejects a wrong gradient oracle") {
  PlanarField::GradientOracles wrong;
  wrong.potential = [](Point2 u) { return 0.5 * u.norm_sq(); };
  wrong.gradient = [](Point2 u) { return u * 1.5; };  // inconsistent
  wrong.control = [](double) { return 1.0; };
  CHECK_THROWS_AS(PlanarField::gradient(wrong), InputError);
}

TEST_CASE("problem JSON round trip") {
  const ProblemSpec prob{
      to_planar({{-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}).shifted_by({0.25, -0.5}),
      benchmark_forcing()};
  const std::string text = problem_to_json(prob);
  const ProblemSpec back = problem_from_json(text);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const Point2 u = oracles::random_in_disk(rng, 2.0);
    CHECK(back.field(u) == prob.field(u));
  }
  CHECK(back.forcing.mean() == prob.forcing.mean());
  CHECK(back.forcing.period() == prob.forcing.period());
  CHECK(back.forcing.l2_norm() == prob.forcing.l2_norm());

  const ProblemSpec sat{PlanarField::saturating_radial(-0.75), Forcing::zero(2.0)};
  const ProblemSpec sat_back = problem_from_json(problem_to_json(sat));
  CHECK(sat_back.field(Point2{1.0, 1.0}) == sat.field(Point2{1.0, 1.0}));

  const ProblemSpec trunc{build_truncated_field(PlanarField::radial_power_gradient(4.0), 5.0),
                          Forcing::zero(1.0)};
  const ProblemSpec trunc_back = problem_from_json(problem_to_json(trunc));
  CHECK(distance(trunc_back.field(Point2{3.0, 1.0}), trunc.field(Point2{3.0, 1.0})) < 1e-15);

  CHECK_THROWS_AS(problem_from_json("{"), InputError);
  CHECK_THROWS_AS(problem_from_json("{\"field\": {\"variant\": \"nope\"}, \"forcing\": {\"T\": 1}}"),
                  InputError);
}
