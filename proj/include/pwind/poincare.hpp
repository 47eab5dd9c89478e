#ifndef PWIND_POINCARE_HPP
#define PWIND_POINCARE_HPP

#include <memory>
#include <optional>
#include <string>

#include "pwind/integrate.hpp"
#include "pwind/winding.hpp"

namespace pwind {

/// The shooting objects: time-T flow (Poincare map), displacement map, and
/// the curves gamma / gamma_q traced by the displacement along circles.
///
/// A ShootingSystem bundles the right-hand side actually integrated with the
/// field used for normalization denominators. For a plain problem both come
/// from the problem itself; the solver substitutes a bounded surrogate here
/// when the raw field would blow up in finite time.
struct ShootingSystem {
  Rhs rhs;
  double period = 1.0;
  std::function<Point2(Point2)> field;  // normalization denominator field
  IntegratorConfig integrator;
};

ShootingSystem make_system(const ProblemSpec& problem, const IntegratorConfig& config = {});

Point2 poincare_map(const ProblemSpec& problem, Point2 u0, const IntegratorConfig& config = {});
Point2 poincare_map(const ShootingSystem& system, Point2 u0);

/// Phi(u0) = P(u0) - u0; zeros are initial values of T-periodic solutions.
Point2 displacement(const ProblemSpec& problem, Point2 u0, const IntegratorConfig& config = {});
Point2 displacement(const ShootingSystem& system, Point2 u0);

/// Batch-capable displacement map Phi for the subdivision solver.
MapOracle displacement_map(const ShootingSystem& system, ExecMode exec = ExecMode::OpenMP);

struct AprioriBound {
  double M = 0.0;
  enum class Method { BoundedField, GradientL2 } method = Method::BoundedField;
  std::string note;
};

/// M with |u(t) - u0| <= M on [0, T]: T (||g||_inf + ||p||_inf-bound) for
/// bounded fields; sqrt(T) ||p - mean p||_L2 for unbounded gradient-type
/// fields (valid for the T-periodic solutions, which is where it is used).
/// Throws InputError when neither formula applies.
AprioriBound apriori_bound(const ProblemSpec& problem);

enum class CurveNormalization { Raw, Normalized };

/// The closed curve theta -> P(r e^{i theta}) - r e^{i theta}, optionally
/// divided by |g(r e^{i theta}) - c| (gamma_q). Evaluations trigger one
/// integration each and are cached per theta; the cache is single-writer
/// per key and deterministic.
class DisplacementCurve {
 public:
  DisplacementCurve(const ProblemSpec& problem, double radius, CurveNormalization normalization,
                    const IntegratorConfig& config = {}, double denom_floor = 1.0e-12);
  DisplacementCurve(ShootingSystem system, double radius, CurveNormalization normalization,
                    Point2 normalization_c, double denom_floor = 1.0e-12);

  /// Throws DenominatorError when |g - c| < floor at an evaluated theta.
  Point2 operator()(double theta) const;
  CurveOracle as_oracle(ExecMode exec = ExecMode::OpenMP) const;

  double radius() const;
  CurveNormalization normalization() const;
  Point2 normalization_constant() const;

 private:
  struct State;
  explicit DisplacementCurve(std::shared_ptr<State> state);
  std::shared_ptr<State> state_;
};

/// Spec operation name: builds the curve for the problem as given, with
/// c = -mean(p) in the normalized case.
DisplacementCurve displacement_curve(const ProblemSpec& problem, double radius,
                                     CurveNormalization normalization,
                                     const IntegratorConfig& config = {});

struct RadiusConfig {
  double r_start = 8.0;
  double r_max = 65536.0;       // 2^16
  double variation_frac = 0.1;  // neighbor variation below this fraction of the margin
  std::size_t initial_samples = 32;
  std::size_t max_rounds = 12;
  std::size_t eval_budget = 1u << 14;  // per radius attempt
  ExecMode exec = ExecMode::OpenMP;
};

/// Numerical Rouche certificate at a radius: the inequality
/// sup |gamma_r - T Gamma| < min |T Gamma| held on the adaptive sample,
/// refined until neighbor variation of both curves is below
/// variation_frac * margin. Evidence at sample resolution, not a proof.
struct RadiusCertificate {
  double radius = 0.0;
  double margin = 0.0;    // min |T Gamma| - sup |gamma - T Gamma|
  std::size_t refinement_depth = 0;
  CurveNormalization normalization = CurveNormalization::Raw;
  Point2 normalization_constant;
  std::vector<double> samples;
  double limit_min = 0.0;
  double sup_diff = 0.0;
};

/// Doubles r from r_start until the Rouche inequality between the
/// displacement curve gamma_r and T * limit_curve certifies. The limit curve
/// is the radial-limit curve Gamma (raw case) or Gamma_q (normalized case);
/// the factor T is applied internally since the displacement over one period
/// approaches T times the limit field. Throws RadiusSearchError when r_max is
/// reached, DenominatorError/WindingError per the curve contracts.
RadiusCertificate select_radius(const ShootingSystem& system, const CurveOracle& limit_curve,
                                CurveNormalization normalization, Point2 normalization_c,
                                const RadiusConfig& config = {});
RadiusCertificate select_radius(const ProblemSpec& problem, const CurveOracle& limit_curve,
                                CurveNormalization normalization, const RadiusConfig& config = {},
                                const IntegratorConfig& integrator = {});

}  // namespace pwind

#endif
