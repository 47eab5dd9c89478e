#ifndef PWIND_CONDITIONS_HPP
#define PWIND_CONDITIONS_HPP

#include <string>
#include <vector>

#include "pwind/poincare.hpp"

namespace pwind {

struct ConditionsConfig {
  // Default ladder reaches 4096: the library's bounded fields settle like 1/r
  // and need the extra rung to meet conv_tol.
  std::vector<double> ladder = {16.0, 64.0, 256.0, 1024.0, 4096.0};
  double conv_tol = 1.0e-3;
  double margin_floor = 1.0e-6;
  int theta_grid = 720;
  double denom_floor = 1.0e-12;
  ExecMode exec = ExecMode::OpenMP;
  WindingConfig winding;
};

enum class LimitNormalization { Raw, Unit };

/// Radial-limit estimate of g along a radius ladder: values of g(r e^{i theta})
/// (or unit-normalized (g - c)/|g - c|) per rung, with the uniformity defect
/// sup_theta |row_{j+1} - row_j| per rung pair. The converged flag means the
/// last defect fell below conv_tol; defects are reported as-is.
struct RadialLimitEstimate {
  std::vector<double> thetas;
  std::vector<std::vector<Point2>> values;  // values[rung][theta index]
  std::vector<double> defects;
  std::vector<double> ladder;
  bool converged = false;
  LimitNormalization normalization = LimitNormalization::Raw;
  Point2 center;  // c in the unit normalization

  const std::vector<Point2>& top_row() const { return values.back(); }
};

/// Throws DenominatorError when the unit normalization denominator drops
/// below the floor, FieldOverflowError on non-finite field values.
RadialLimitEstimate radial_limit_curve(const PlanarField& field, LimitNormalization normalization,
                                       Point2 c, const ConditionsConfig& config = {});

/// Re-evaluable oracle for the estimate's top rung (refinable by the winding
/// module at any theta).
CurveOracle radial_limit_oracle(const PlanarField& field, LimitNormalization normalization, Point2 c,
                                double radius, double denom_floor = 1.0e-12);

enum class Verdict { Satisfied, Violated, Inconclusive };

const char* to_string(Verdict v);

struct ConditionReport {
  std::string condition;  // "nirenberg" or "ortega-sanchez"
  Verdict verdict = Verdict::Inconclusive;
  double margin = 0.0;  // min_theta |limit(theta) - pole|
  int winding = 0;
  bool winding_computed = false;
  Point2 pole;
  bool converged = false;
  bool analytic_limit = false;  // polynomial leading-term limit used
  std::vector<double> defects;
  std::vector<double> ladder;
  std::string diagnostics;

  bool satisfied() const { return verdict == Verdict::Satisfied; }
};

/// Nirenberg condition for bounded fields, under the artifact convention
/// u' = g(u) + p: the radial-limit curve of g must avoid the pole c = -mean(p)
/// with margin, and wind around it. Inconclusive when the ladder has not
/// converged; never upgraded to satisfied.
ConditionReport check_nirenberg(const ProblemSpec& problem, const ConditionsConfig& config = {});

/// Ortega-Sanchez condition: the unit-normalized limit curve Gamma_q (with
/// c = -mean(p)) must have nonzero winding around 0. For conjugate-polynomial
/// fields the limit is (a_n/|a_n|) e^{-i n theta} analytically and the report
/// is driven by it (flagged analytic_limit), with the numeric top rung checked
/// for winding agreement.
ConditionReport check_ortega_sanchez(const ProblemSpec& problem, const ConditionsConfig& config = {});

/// Scalar Landesman-Lazer inequality (stated in the intro convention
/// u' + g(u) = p): true iff p_mean lies strictly between g_minus and g_plus
/// in either order.
bool check_scalar_landesman_lazer(double g_minus, double g_plus, double p_mean);

/// Exact limit curve theta -> (a_n/|a_n|) e^{-i n theta} for a polynomial.
CurveOracle analytic_gamma_q_polynomial(const Polynomial& f);

}  // namespace pwind

#endif
