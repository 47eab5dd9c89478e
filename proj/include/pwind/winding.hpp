#ifndef PWIND_WINDING_HPP
#define PWIND_WINDING_HPP

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "pwind/parallel.hpp"
#include "pwind/point2.hpp"

namespace pwind {

/// A closed planar curve given as a re-evaluable oracle on [0, 2pi].
/// Evaluation must be deterministic; eval_batch must agree with eval
/// pointwise (default implementation maps eval over the batch).
struct CurveOracle {
  std::function<Point2(double)> eval;
  std::function<std::vector<Point2>(const std::vector<double>&, ExecMode)> eval_batch;

  Point2 operator()(double theta) const { return eval(theta); }
  std::vector<Point2> batch(const std::vector<double>& thetas, ExecMode mode) const;

  static CurveOracle from_function(std::function<Point2(double)> f);
};

/// A planar map with an optional batch entry point (used for box boundaries
/// whose evaluations are independent ODE solves).
struct MapOracle {
  std::function<Point2(Point2)> eval;
  std::function<std::vector<Point2>(const std::vector<Point2>&, ExecMode)> eval_batch;

  Point2 operator()(Point2 u) const { return eval(u); }
  std::vector<Point2> batch(const std::vector<Point2>& points, ExecMode mode) const;

  static MapOracle from_function(std::function<Point2(Point2)> f);
};

struct WindingConfig {
  double pole_floor_rel = 1.0e-9;   // delta_pole = rel * curve scale
  double scale_floor_abs = 0.0;     // curves smaller than this are "at the pole"
  std::size_t budget = 1u << 18;    // max curve evaluations
  double residue_tol = 0.1;         // max |turn sum / 2pi - nearest integer|
  double closure_tol_rel = 1.0e-6;  // |c(0) - c(2pi)| <= rel * scale
  std::size_t initial_samples = 16;
  ExecMode exec = ExecMode::OpenMP;
  bool keep_samples = false;
};

struct WindingResult {
  int winding = 0;
  double min_pole_distance = 0.0;
  double max_step_turn = 0.0;  // radians, certified < pi/2
  std::size_t samples_used = 0;
  double residue = 0.0;
  double curve_scale = 0.0;
  std::vector<std::pair<double, Point2>> samples;  // populated when keep_samples
};

/// Certified winding number of the curve around the pole: the theta partition
/// is refined until every consecutive pair subtends an angle < pi/2 at the
/// pole and every sample stays clear of it. Throws WindingError on failure;
/// never silently rounds an inconsistent turn sum.
WindingResult winding_number(const CurveOracle& curve, Point2 pole, const WindingConfig& config = {});

/// Strict-mode entry for curves given only as point lists: fails (throws
/// WindingError with kind StrictModeRefinementNeeded) where the oracle-based
/// routine would refine. Points are the closed polygon in order; the last
/// point may equal the first.
WindingResult winding_number_strict(const std::vector<Point2>& points, Point2 pole,
                                    const WindingConfig& config = {});

struct RoucheResult {
  bool equal = false;
  double margin = 0.0;         // min over samples of |B - pole| - |A - B|
  double witness_theta = 0.0;  // violating theta when equal == false
  int winding_a = 0;
  int winding_b = 0;
  std::size_t samples_used = 0;
};

/// Dog-on-a-leash check: |A(theta) - B(theta)| < |B(theta) - pole| on a
/// refined joint sample. On success also computes both windings directly and
/// requires them to agree (a discrepancy is an internal error).
RoucheResult rouche_equal_winding(const CurveOracle& a, const CurveOracle& b, Point2 pole,
                                  const WindingConfig& config = {});

/// Counterclockwise parameterization of the square boundary centered at
/// `center` with the given half width, composed with `map`: theta quarters
/// map affinely onto the four edges.
CurveOracle boundary_oracle(Point2 center, double half_width, const MapOracle& map);

/// The square boundary point itself at parameter theta (identity map case).
Point2 square_boundary_point(Point2 center, double half_width, double theta);

}  // namespace pwind

#endif
