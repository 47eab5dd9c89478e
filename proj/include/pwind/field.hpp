#ifndef PWIND_FIELD_HPP
#define PWIND_FIELD_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pwind/point2.hpp"
#include "pwind/polynomial.hpp"

namespace pwind {

/// Sup-norm report for a field: empty value means unbounded.
struct SupNorm {
  std::optional<double> value;
  bool exact = false;
  std::string method;

  bool bounded() const { return value.has_value(); }
};

/// A planar vector field g: R^2 -> R^2, immutable after construction.
///
/// Variants:
///  - ConjugatePolynomial: g(z) = f(conj z) for a complex polynomial f. A
///    gradient field by the Cauchy-Riemann equations, with potential
///    Re F(conj z) for F an antiderivative of f.
///  - SaturatingRadial: g(z) = amplitude * z / (1 + |z|).
///  - ComponentArctan: g(u) = (c1 atan u1, c2 atan u2).
///  - Gradient: user-supplied potential G, gradient, and control function xi
///    with |grad G(u)| <= xi(G(u)).
///  - TruncatedGradient: phi'(G(u)) grad G(u), built by build_truncated_field.
/// Any variant may additionally carry a constant offset (the Shifted form used
/// by the zero-mean reduction); the offset adds <c, u> to the potential.
class PlanarField {
 public:
  enum class Variant { ConjugatePolynomial, SaturatingRadial, ComponentArctan, Gradient, TruncatedGradient };

  struct GradientOracles {
    std::function<double(Point2)> potential;
    std::function<Point2(Point2)> gradient;
    std::function<double(double)> control;  // xi: R -> (0, inf)
    std::string json_name;                  // empty: not serializable
    std::vector<double> json_params;
  };

  /// Leading coefficient must be nonzero and degree >= 1; the analytic
  /// potential is attached and checked by finite differences.
  static PlanarField conjugate_polynomial(Polynomial f);
  static PlanarField saturating_radial(double amplitude);
  static PlanarField component_arctan(double c1, double c2);
  /// User gradient field; the gradient oracle is checked against the
  /// potential by finite differences on sampled points.
  static PlanarField gradient(GradientOracles oracles);
  /// G(u) = |u|^m / m with control xi(s) = (m max(s,0))^((m-1)/m) + 1e-9; m >= 2.
  static PlanarField radial_power_gradient(double m);

  /// Evaluates g(u) (offset included). Throws InputError on non-finite u and
  /// FieldOverflowError when the result is not finite.
  Point2 operator()(Point2 u) const;

  Variant variant() const;
  Point2 offset() const { return offset_; }
  bool is_shifted() const { return offset_.x != 0.0 || offset_.y != 0.0; }
  /// Same field plus a constant: the Shifted form. Offsets accumulate.
  PlanarField shifted_by(Point2 c) const;
  /// The field without its offset.
  PlanarField without_offset() const;

  SupNorm sup_norm() const;

  /// True when the field is grad of a C^1 potential (all library variants are).
  bool is_gradient_type() const;
  /// All variants except TruncatedGradient expose their potential.
  bool has_potential() const;
  double potential(Point2 u) const;

  /// Present for ConjugatePolynomial only.
  const Polynomial* conjugate_polynomial_coeffs() const;
  /// Present for SaturatingRadial only.
  std::optional<double> saturating_amplitude() const;
  /// Present for ComponentArctan only: (c1, c2).
  std::optional<Point2> arctan_coeffs() const;
  /// Present for Gradient and TruncatedGradient: the oracles (base oracles for truncated).
  const GradientOracles* gradient_oracles() const;
  /// Truncation radius R; present for TruncatedGradient only.
  std::optional<double> truncation_radius() const;

  /// phi'(s) of the truncation blend: 1 on |s| <= R, 1/xi(s) on |s| >= 2R,
  /// cosine blend between. Exposed for seam diagnostics.
  double truncation_phi_prime(double s) const;

 private:
  struct Impl;
  explicit PlanarField(std::shared_ptr<const Impl> impl, Point2 offset = {});
  std::shared_ptr<const Impl> impl_;
  Point2 offset_;

  friend PlanarField build_truncated_field(const PlanarField&, double, const struct TruncationOptions&);
};

/// Options for build_truncated_field's sampled validation and sup estimate.
struct TruncationOptions {
  int grid_radii = 256;
  int grid_angles = 256;
  double grid_r_max = 1.0e4;
  double grid_r_min = 1.0e-2;
  double control_slack = 1.0e-9;  // tolerated relative violation of |grad G| <= xi(G)
};

/// Spec operation names, thin wrappers over the class surface.
Point2 eval_field(const PlanarField& field, Point2 u);
SupNorm field_sup_norm(const PlanarField& field);

/// Builds the ConjugatePolynomial field g(z) = f(conj z) for coefficients
/// given lowest degree first; requires degree >= 1 and nonzero leading coeff.
PlanarField to_planar(const std::vector<std::complex<double>>& coeffs);

/// Truncated field g_hat(u) = phi'(G(u)) grad G(u): equal to grad G where
/// |G| <= R, magnitude-controlled (|g_hat| <= 1) where |G| >= 2R, with a
/// smooth monotone blend between, so that g_hat is bounded while pointing
/// exactly along grad G everywhere. Validates xi > 0 and the control
/// inequality on the sampling grid; throws ControlError naming the first
/// violating point.
PlanarField build_truncated_field(const PlanarField& gradient_field, double R,
                                  const TruncationOptions& opts = {});

/// Finite-difference consistency of field vs its potential on random points
/// in the disk of the given radius. Throws InputError on mismatch.
void check_gradient_consistency(const PlanarField& field, int samples = 100, double radius = 2.0,
                                double step = 1.0e-5, double rel_tol = 1.0e-6);

}  // namespace pwind

#endif
