#ifndef PWIND_SOLVER_HPP
#define PWIND_SOLVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "pwind/conditions.hpp"

namespace pwind {

struct BoxRegion {
  Point2 center;
  double half_width = 1.0;
  int depth = 0;

  bool contains(Point2 u) const {
    return std::abs(u.x - center.x) <= half_width && std::abs(u.y - center.y) <= half_width;
  }
};

struct SolverConfig {
  double min_box = 1.0e-3;
  double solve_tol = 1.0e-10;
  double periodicity_tol = 1.0e-8;
  double dedupe_radius = 1.0e-4;
  double root_tol = 1.0e-8;
  double jacobian_step = 1.0e-6;
  double l2_slack = 1.0e-6;
  int max_depth = 40;
  int newton_max_iterations = 50;
  int newton_max_halvings = 20;
  double jacobian_cond_limit = 1.0e12;
  ExecMode exec = ExecMode::OpenMP;
  IntegratorConfig integrator;
  WindingConfig winding;
  RadiusConfig radius;
  ConditionsConfig conditions;
};

struct SubdivisionResult {
  std::vector<BoxRegion> candidates;  // nonzero boundary winding at min_box scale, sorted by (x, y)
  std::vector<int> candidate_windings;  // boundary winding per candidate
  std::vector<BoxRegion> escalated;   // winding undefined after retries, kept conservatively
  std::vector<BoxRegion> pruned_sample;  // a few pruned boxes, for spot checks
  int root_winding = 0;
  bool root_winding_defined = false;
  bool partial = false;  // max_depth exceeded with unresolved boxes
  std::size_t boxes_examined = 0;
  std::size_t pruned = 0;
};

/// Degree-guided quadtree: boundary winding 0 prunes a box, nonzero winding
/// splits until min_box, winding failures retry with inflated boundaries
/// {1.05, 0.95, 1.10} and escalate conservatively (a box is never silently
/// dropped). Sibling boxes are processed concurrently; output order is
/// deterministic.
SubdivisionResult find_zeros_subdivision(const MapOracle& map, BoxRegion region,
                                         const SolverConfig& config = {});

struct PolishResult {
  enum class Status { Converged, SingularJacobian, NoConvergence };
  Status status = Status::NoConvergence;
  Point2 point;
  double residual = 0.0;
  int iterations = 0;
};

/// Damped Newton on the map with central finite-difference Jacobian.
PolishResult newton_polish(const MapOracle& map, Point2 u_init, const SolverConfig& config = {});

struct VerificationReport {
  bool passed = false;
  double endpoint_gap = 0.0;  // |u(T) - u(0)| re-integrated at 10x tighter tolerance
  bool l2_checked = false;
  double l2_lhs = 0.0;  // ||u'||_L2
  double l2_rhs = 0.0;  // ||p||_L2
  std::string note;
};

/// Re-integrates the candidate on the original problem at 10x tighter
/// tolerance; for gradient-type fields also checks ||u'||_L2 <= ||p||_L2 + slack.
VerificationReport verify_solution(const ProblemSpec& problem, Point2 u0,
                                   const SolverConfig& config = {});

struct PeriodicSolution {
  Point2 u0;
  double residual = 0.0;  // |Phi(u0)| on the original problem
  Trajectory trajectory;
  BoxRegion located_box;
  int boundary_winding = 0;
  VerificationReport verification;
};

enum class SolveStatus {
  Solutions,
  ConditionsViolated,
  ConditionsInconclusive,
  RadiusNotFound,
  NoZeroCertified,
  NonIsolatedSet,
};

const char* to_string(SolveStatus s);

/// Bounded shooting surrogate info: unbounded gradient-type fields are
/// magnitude-capped (direction preserved, zeros unchanged) before shooting,
/// and every candidate is verified against the original field.
struct CapInfo {
  bool applied = false;
  double magnitude = 0.0;        // cap C
  double covered_radius = 0.0;   // |u| ball on which the cap is inactive
};

struct SolveResult {
  SolveStatus status = SolveStatus::Solutions;
  std::vector<PeriodicSolution> solutions;  // sorted by (x, y)
  ConditionReport conditions;
  std::optional<RadiusCertificate> radius;
  CapInfo cap;
  SubdivisionResult subdivision;
  std::vector<std::string> diagnostics;
  /// Polished candidates that failed verification (kept for downstream
  /// re-examination, e.g. at a different period).
  std::vector<std::pair<Point2, VerificationReport>> rejected_candidates;
};

/// Full pipeline: zero-mean reduction, condition check (Nirenberg for bounded
/// fields, Ortega-Sanchez otherwise), Rouche radius selection, subdivision
/// over the square circumscribing the certified disk (or region_override),
/// Newton polish, verification on the original problem, dedupe.
/// Condition/radius failures return an empty solution list with the report
/// attached rather than throwing. With an explicit region_override the hunt
/// proceeds even when the checks did not certify (the caller pinned the
/// search box); solutions remain individually verified either way.
SolveResult solve_periodic(const ProblemSpec& problem, const SolverConfig& config = {},
                           std::optional<BoxRegion> region_override = std::nullopt);

/// The bounded shooting system solve_periodic shoots on for this problem:
/// the zero-mean reduced system itself when the field is bounded, the
/// magnitude-capped surrogate otherwise (cap reported through cap_out).
ShootingSystem shooting_system(const ProblemSpec& problem, const SolverConfig& config = {},
                               double region_hint = 0.0, CapInfo* cap_out = nullptr);

struct FtaResult {
  std::vector<Point2> roots;  // sorted by (x, y)
  std::vector<double> residuals;
  std::vector<std::pair<Point2, double>> rejected;  // candidates with |f| >= root_tol
  bool missing_flagged = false;
  int expected_distinct = -1;
  double period_used = 1.0;
  SolveResult solve;
};

/// Roots of f recovered as periodic orbits of z' = f(conj z): with p = 0 the
/// periodic solutions are constants, i.e. roots. The search region is the
/// Cauchy-bound box of half width 2 + max |a_k / a_n|. The period is
/// min(1, 4 / sup|f'|) so the time-T flow stays well conditioned; any period
/// certifies the same constants. expected_distinct >= 0 flags missing roots.
FtaResult fta_roots(const Polynomial& f, const SolverConfig& config = {}, int expected_distinct = -1);

struct ExpDemoReport {
  double R = 0.0;
  bool winding_certified = false;
  int winding = 0;
  std::string winding_error;
  WindingResult stats;
  double modulus_min = 0.0;
  double modulus_max = 0.0;
  double expected_min = 0.0;  // e^{-R}
  double expected_max = 0.0;  // e^{R}
  std::vector<std::pair<double, Point2>> curve;  // dump for plotting
};

/// The essential-singularity counterexample: the curve
/// theta -> e^{R cos theta} e^{-i R sin theta} has zero winding number while
/// its modulus ranges over [e^{-R}, e^{R}].
ExpDemoReport exp_demo(double R, const WindingConfig& config = {});

}  // namespace pwind

#endif
