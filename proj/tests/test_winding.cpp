#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "pwind/errors.hpp"
#include "pwind/polynomial.hpp"
#include "pwind/winding.hpp"

using namespace pwind;

namespace {

CurveOracle circle(int k, Point2 center = {}, double radius = 1.0) {
  return CurveOracle::from_function([k, center, radius](double th) {
    return center + unit_at(k * th) * radius;
  });
}

}  // namespace

TEST_CASE("winding of e^{ik theta} is exactly k") {
  for (int k = -5; k <= 5; ++k) {
    const WindingResult r = winding_number(circle(k), {0.0, 0.0});
    CHECK(r.winding == k);
    CHECK(r.max_step_turn < kPi / 2.0);
    CHECK(r.residue < 0.1);
  }
  // Pole outside the curve.
  CHECK(winding_number(circle(-3), {2.0, 0.0}).winding == 0);
  // Any pole with |pole| < 0.9.
  for (int k = -5; k <= 5; ++k) {
    if (k == 0) continue;
    CHECK(winding_number(circle(k), {0.3, -0.7}).winding == k);
  }
}

TEST_CASE("winding is translation covariant") {
  const Point2 pole{0.4, 0.2};
  const CurveOracle c = circle(2, {0.1, -0.3});
  const CurveOracle translated = CurveOracle::from_function(
      [c, pole](double th) { return c.eval(th) - pole; });
  CHECK(winding_number(c, pole).winding == winding_number(translated, {0.0, 0.0}).winding);
}

TEST_CASE("winding properties hold over randomized circles") {
  // Generator-driven covariance and reversal checks: random k, center, radius
  // and poles kept away from the curve.
  std::mt19937_64 rng(0xc1c1e5ull);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_int_distribution<int> kdist(-5, 5);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = kdist(rng);
    const Point2 center{2.0 * unif(rng), 2.0 * unif(rng)};
    const double radius = 0.5 + 1.5 * std::abs(unif(rng));
    const CurveOracle c = circle(k, center, radius);
    Point2 pole = center + unit_at(kPi * unif(rng)) * (0.85 * radius * std::abs(unif(rng)));
    if (k == 0) pole = center + Point2{3.0 * radius, 0.0};  // constant curve: pole off the point

    const int w = winding_number(c, pole).winding;
    CHECK(w == (k == 0 ? 0 : k));

    const CurveOracle translated =
        CurveOracle::from_function([c, pole](double th) { return c.eval(th) - pole; });
    CHECK(winding_number(translated, {0.0, 0.0}).winding == w);

    const CurveOracle reversed =
        CurveOracle::from_function([c](double th) { return c.eval(kTwoPi - th); });
    CHECK(winding_number(reversed, pole).winding == -w);
  }
}

TEST_CASE("reversing orientation negates the winding") {
  const CurveOracle fwd = circle(3);
  const CurveOracle rev = CurveOracle::from_function([fwd](double th) { return fwd.eval(kTwoPi - th); });
  CHECK(winding_number(fwd, {0.0, 0.0}).winding == 3);
  CHECK(winding_number(rev, {0.0, 0.0}).winding == -3);
}

TEST_CASE("exp curve has zero winding") {
  const double R = 3.0;
  const CurveOracle curve = CurveOracle::from_function([R](double th) {
    const double mod = std::exp(R * std::cos(th));
    return Point2{mod * std::cos(R * std::sin(th)), -mod * std::sin(R * std::sin(th))};
  });
  const WindingResult r = winding_number(curve, {0.0, 0.0});
  CHECK(r.winding == 0);
}

TEST_CASE("pole too close and closure failures are reported") {
  CHECK_THROWS_AS(winding_number(circle(1), {1.0, 0.0}), WindingError);  // pole on the curve

  const CurveOracle open_spiral =
      CurveOracle::from_function([](double th) { return unit_at(th) * (1.0 + th); });
  try {
    winding_number(open_spiral, {0.0, 0.0});
    FAIL("expected WindingError");
  } catch (const WindingError& e) {
    CHECK(e.kind == WindingError::Kind::NotClosed);
  }

  const CurveOracle at_pole = CurveOracle::from_function([](double) { return Point2{0.0, 0.0}; });
  CHECK_THROWS_AS(winding_number(at_pole, {0.0, 0.0}), WindingError);
}

TEST_CASE("refinement budget failure on a noisy curve") {
  // Deterministic high-frequency sign flips: adjacent samples keep jumping
  // across the pole, so the turn criterion can never certify.
  const CurveOracle noisy = CurveOracle::from_function([](double th) {
    const double s = std::sin(1.0e7 * th);
    return Point2{s >= 0.0 ? 1.0 : -1.0, std::cos(1.0e7 * th)};
  });
  WindingConfig cfg;
  cfg.budget = 4096;
  CHECK_THROWS_AS(winding_number(noisy, {0.0, 0.0}, cfg), WindingError);
}

TEST_CASE("strict mode: point lists fail rather than refine") {
  std::vector<Point2> coarse;
  for (int i = 0; i < 3; ++i) coarse.push_back(unit_at(kTwoPi * i / 3.0));
  try {
    winding_number_strict(coarse, {0.0, 0.0});
    FAIL("expected strict-mode refusal");
  } catch (const WindingError& e) {
    CHECK(e.kind == WindingError::Kind::StrictModeRefinementNeeded);
  }

  std::vector<Point2> fine;
  for (int i = 0; i < 64; ++i) fine.push_back(unit_at(kTwoPi * i / 64.0));
  CHECK(winding_number_strict(fine, {0.0, 0.0}).winding == 1);
}

TEST_CASE("rouche: dog on a leash") {
  const RoucheResult ok = rouche_equal_winding(
      CurveOracle::from_function([](double th) { return unit_at(th) * 1.1; }), circle(1), {0.0, 0.0});
  CHECK(ok.equal);
  CHECK(ok.margin == doctest::Approx(0.9).epsilon(1e-9));
  CHECK(ok.winding_a == 1);
  CHECK(ok.winding_b == 1);

  const RoucheResult far = rouche_equal_winding(
      CurveOracle::from_function([](double th) { return unit_at(th) + Point2{2.0, 0.0}; }), circle(1),
      {0.0, 0.0});
  CHECK_FALSE(far.equal);
  CHECK(far.margin <= 0.0);
}

TEST_CASE("boundary oracle: identity and reflection windings") {
  const MapOracle identity = MapOracle::from_function([](Point2 u) { return u; });
  CHECK(winding_number(boundary_oracle({0.0, 0.0}, 1.0, identity), {0.0, 0.0}).winding == 1);
  // Box not containing the pole.
  CHECK(winding_number(boundary_oracle({3.0, 3.0}, 1.0, identity), {0.0, 0.0}).winding == 0);

  const MapOracle reflect = MapOracle::from_function([](Point2 u) { return Point2{u.x, -u.y}; });
  CHECK(winding_number(boundary_oracle({0.0, 0.0}, 1.0, reflect), {0.0, 0.0}).winding == -1);
}

TEST_CASE("additivity over subdivision on analytic maps") {
  // z^2 - 1 as a plain planar map (no conjugation: zeros at +-1, each index +1).
  const MapOracle zsq = MapOracle::from_function([](Point2 u) {
    const auto z = u.as_complex();
    return Point2::from_complex(z * z - 1.0);
  });
  const Point2 center{0.1, 0.05};
  const double h = 2.0;
  const int parent = winding_number(boundary_oracle(center, h, zsq), {0.0, 0.0}).winding;
  int sum = 0;
  const double q = h / 2.0;
  for (const Point2 off : {Point2{-q, -q}, Point2{q, -q}, Point2{-q, q}, Point2{q, q}})
    sum += winding_number(boundary_oracle(center + off, q, zsq), {0.0, 0.0}).winding;
  CHECK(parent == 2);
  CHECK(sum == parent);
}

TEST_CASE("argument principle: winding of p(e^{i theta}) counts roots in the disk") {
  // Independent dual route: the companion-matrix oracle counts the roots of a
  // random polynomial inside the unit disk; the certified winding of the
  // image of the unit circle must equal that count exactly.
  std::mt19937_64 rng(0xa26ull);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  int checked = 0;
  for (int i = 0; i < 40 || checked < 30; ++i) {
    REQUIRE(i < 200);
    const int degree = 1 + (i % 6);
    std::vector<std::complex<double>> coeffs(degree + 1);
    for (auto& c : coeffs) c = {2.0 * unif(rng), 2.0 * unif(rng)};
    if (std::abs(coeffs.back()) < 0.1) coeffs.back() += 1.0;
    const pwind::Polynomial p{coeffs};

    int inside = 0;
    bool near_circle = false;
    for (const auto& r : oracles::companion_roots(coeffs)) {
      if (std::abs(r) < 1.0) ++inside;
      if (std::abs(std::abs(r) - 1.0) < 1e-4) near_circle = true;
    }
    if (near_circle) continue;

    const CurveOracle curve = CurveOracle::from_function(
        [p](double th) { return Point2::from_complex(p.eval(std::polar(1.0, th))); });
    CHECK(winding_number(curve, {0.0, 0.0}).winding == inside);
    ++checked;
  }
}

TEST_CASE("square boundary parameterization is counterclockwise and closed") {
  const Point2 c{1.0, -2.0};
  const double h = 0.5;
  CHECK(distance(square_boundary_point(c, h, 0.0), Point2{1.5, -2.5}) < 1e-15);
  CHECK(distance(square_boundary_point(c, h, kTwoPi), square_boundary_point(c, h, 0.0)) < 1e-12);
  // Quarter marks hit the corners in ccw order.
  CHECK(distance(square_boundary_point(c, h, kTwoPi * 0.25), Point2{1.5, -1.5}) < 1e-12);
  CHECK(distance(square_boundary_point(c, h, kTwoPi * 0.5), Point2{0.5, -1.5}) < 1e-12);
  CHECK(distance(square_boundary_point(c, h, kTwoPi * 0.75), Point2{0.5, -2.5}) < 1e-12);
}
