#include "pwind/field.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <variant>

#include "pwind/errors.hpp"

namespace pwind {

namespace {

std::string point_str(Point2 u) {
  std::ostringstream os;
  os << "(" << u.x << ", " << u.y << ")";
  return os.str();
}

struct ConjPolyData {
  Polynomial f;
  Polynomial antiderivative;  // F with Re F(conj z) the potential
};

struct SatRadialData {
  double amplitude;
};

struct ArctanData {
  double c1, c2;
};

struct TruncatedData {
  PlanarField::GradientOracles base;
  double R;
  double sup_estimate;      // grid estimate of sup |g_hat|
  double sup_refined;       // estimate on the 2x refined grid
  std::string grid_note;
};

using FieldData =
    std::variant<ConjPolyData, SatRadialData, ArctanData, PlanarField::GradientOracles, TruncatedData>;

double lambda_arctan(double s) { return s * std::atan(s) - 0.5 * std::log1p(s * s); }

double phi_prime_blend(double s, double R, const std::function<double(double)>& xi) {
  const double a = std::abs(s);
  if (a <= R) return 1.0;
  const double x = xi(s);
  if (x <= 0.0) throw ControlError("truncated field: xi(s) <= 0 at s=" + std::to_string(s));
  const double inv = 1.0 / x;
  if (a >= 2.0 * R) return inv;
  const double w = 0.5 * (1.0 - std::cos(kPi * (a - R) / R));
  return 1.0 + (inv - 1.0) * w;
}

}  // namespace

struct PlanarField::Impl {
  FieldData data;
};

PlanarField::PlanarField(std::shared_ptr<const Impl> impl, Point2 offset)
    : impl_(std::move(impl)), offset_(offset) {}

PlanarField PlanarField::conjugate_polynomial(Polynomial f) {
  if (f.degree() < 1) throw InputError("conjugate polynomial: degree must be >= 1");
  if (std::abs(f.leading()) == 0.0) throw InputError("conjugate polynomial: leading coefficient is zero");
  for (const auto& c : f.coefficients())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw InputError("conjugate polynomial: non-finite coefficient");
  ConjPolyData data{f, f.antiderivative()};
  PlanarField field(std::make_shared<Impl>(Impl{std::move(data)}));
  check_gradient_consistency(field);
  return field;
}

PlanarField PlanarField::saturating_radial(double amplitude) {
  if (!std::isfinite(amplitude)) throw InputError("saturating radial: non-finite amplitude");
  return PlanarField(std::make_shared<Impl>(Impl{SatRadialData{amplitude}}));
}

PlanarField PlanarField::component_arctan(double c1, double c2) {
  if (!std::isfinite(c1) || !std::isfinite(c2)) throw InputError("component arctan: non-finite coefficient");
  return PlanarField(std::make_shared<Impl>(Impl{ArctanData{c1, c2}}));
}

PlanarField PlanarField::gradient(GradientOracles oracles) {
  if (!oracles.potential || !oracles.gradient || !oracles.control)
    throw InputError("gradient field: potential, gradient and control oracles are all required");
  PlanarField field(std::make_shared<Impl>(Impl{std::move(oracles)}));
  check_gradient_consistency(field);
  return field;
}

PlanarField PlanarField::radial_power_gradient(double m) {
  if (!(m >= 2.0)) throw InputError("radial power gradient: exponent must be >= 2");
  GradientOracles o;
  o.potential = [m](Point2 u) { return std::pow(u.norm(), m) / m; };
  o.gradient = [m](Point2 u) {
    const double r = u.norm();
    if (r == 0.0) return Point2{0.0, 0.0};
    return u * std::pow(r, m - 2.0);
  };
  o.control = [m](double s) { return std::pow(m * std::max(s, 0.0), (m - 1.0) / m) + 1.0e-9; };
  o.json_name = "radial_power";
  o.json_params = {m};
  return gradient(std::move(o));
}

Point2 PlanarField::operator()(Point2 u) const {
  if (!u.is_finite()) throw InputError("field evaluation: non-finite input point " + point_str(u));
  Point2 g = std::visit(
      [&](const auto& d) -> Point2 {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, ConjPolyData>) {
          return Point2::from_complex(d.f.eval(std::conj(u.as_complex())));
        } else if constexpr (std::is_same_v<D, SatRadialData>) {
          return u * (d.amplitude / (1.0 + u.norm()));
        } else if constexpr (std::is_same_v<D, ArctanData>) {
          return Point2{d.c1 * std::atan(u.x), d.c2 * std::atan(u.y)};
        } else if constexpr (std::is_same_v<D, GradientOracles>) {
          return d.gradient(u);
        } else {
          static_assert(std::is_same_v<D, TruncatedData>);
          const Point2 grad = d.base.gradient(u);
          const double s = d.base.potential(u);
          const double fp = phi_prime_blend(s, d.R, d.base.control);
          if (fp == 1.0) return grad;  // exact equality inside |G| <= R
          return grad * fp;
        }
      },
      impl_->data);
  g += offset_;
  if (!g.is_finite()) throw FieldOverflowError("field overflow at u=" + point_str(u));
  return g;
}

PlanarField::Variant PlanarField::variant() const {
  return std::visit(
      [](const auto& d) -> Variant {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, ConjPolyData>) return Variant::ConjugatePolynomial;
        else if constexpr (std::is_same_v<D, SatRadialData>) return Variant::SaturatingRadial;
        else if constexpr (std::is_same_v<D, ArctanData>) return Variant::ComponentArctan;
        else if constexpr (std::is_same_v<D, PlanarField::GradientOracles>) return Variant::Gradient;
        else return Variant::TruncatedGradient;
      },
      impl_->data);
}

PlanarField PlanarField::shifted_by(Point2 c) const {
  if (!c.is_finite()) throw InputError("shifted field: non-finite offset");
  return PlanarField(impl_, offset_ + c);
}

PlanarField PlanarField::without_offset() const { return PlanarField(impl_); }

SupNorm PlanarField::sup_norm() const {
  const double off = offset_.norm();
  return std::visit(
      [&](const auto& d) -> SupNorm {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, ConjPolyData>) {
          return {std::nullopt, true, "unbounded (polynomial of degree >= 1)"};
        } else if constexpr (std::is_same_v<D, SatRadialData>) {
          // sup |a u/(1+|u|) + c| = |a| + |c|, approached as |u| -> inf toward c.
          return {std::abs(d.amplitude) + off, true, "|amplitude| + |offset|"};
        } else if constexpr (std::is_same_v<D, ArctanData>) {
          const double bx = std::abs(d.c1) * kPi / 2.0 + std::abs(offset_.x);
          const double by = std::abs(d.c2) * kPi / 2.0 + std::abs(offset_.y);
          return {std::hypot(bx, by), true, "componentwise |c_i| pi/2 + |offset_i|, Euclidean"};
        } else if constexpr (std::is_same_v<D, PlanarField::GradientOracles>) {
          return {std::nullopt, true, "unbounded (raw gradient field)"};
        } else {
          static_assert(std::is_same_v<D, TruncatedData>);
          return {d.sup_estimate + off, false, d.grid_note};
        }
      },
      impl_->data);
}

bool PlanarField::is_gradient_type() const { return true; }

bool PlanarField::has_potential() const { return variant() != Variant::TruncatedGradient; }

double PlanarField::potential(Point2 u) const {
  const double lin = dot(offset_, u);
  return std::visit(
      [&](const auto& d) -> double {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, ConjPolyData>) {
          return d.antiderivative.eval(std::conj(u.as_complex())).real() + lin;
        } else if constexpr (std::is_same_v<D, SatRadialData>) {
          const double r = u.norm();
          return d.amplitude * (r - std::log1p(r)) + lin;
        } else if constexpr (std::is_same_v<D, ArctanData>) {
          return d.c1 * lambda_arctan(u.x) + d.c2 * lambda_arctan(u.y) + lin;
        } else if constexpr (std::is_same_v<D, PlanarField::GradientOracles>) {
          return d.potential(u) + lin;
        } else {
          throw InputError("truncated gradient field has no closed-form potential");
        }
      },
      impl_->data);
}

const Polynomial* PlanarField::conjugate_polynomial_coeffs() const {
  if (const auto* d = std::get_if<ConjPolyData>(&impl_->data)) return &d->f;
  return nullptr;
}

std::optional<double> PlanarField::saturating_amplitude() const {
  if (const auto* d = std::get_if<SatRadialData>(&impl_->data)) return d->amplitude;
  return std::nullopt;
}

std::optional<Point2> PlanarField::arctan_coeffs() const {
  if (const auto* d = std::get_if<ArctanData>(&impl_->data)) return Point2{d->c1, d->c2};
  return std::nullopt;
}

const PlanarField::GradientOracles* PlanarField::gradient_oracles() const {
  if (const auto* d = std::get_if<GradientOracles>(&impl_->data)) return d;
  if (const auto* t = std::get_if<TruncatedData>(&impl_->data)) return &t->base;
  return nullptr;
}

std::optional<double> PlanarField::truncation_radius() const {
  if (const auto* t = std::get_if<TruncatedData>(&impl_->data)) return t->R;
  return std::nullopt;
}

double PlanarField::truncation_phi_prime(double s) const {
  const auto* t = std::get_if<TruncatedData>(&impl_->data);
  if (!t) throw InputError("truncation_phi_prime: field is not a truncated gradient");
  return phi_prime_blend(s, t->R, t->base.control);
}

Point2 eval_field(const PlanarField& field, Point2 u) { return field(u); }
SupNorm field_sup_norm(const PlanarField& field) { return field.sup_norm(); }

PlanarField to_planar(const std::vector<std::complex<double>>& coeffs) {
  return PlanarField::conjugate_polynomial(Polynomial{coeffs});
}

PlanarField build_truncated_field(const PlanarField& gradient_field, double R,
                                  const TruncationOptions& opts) {
  if (!(R > 0.0)) throw InputError("build_truncated_field: R must be positive");
  if (opts.grid_radii < 2 || opts.grid_angles < 4 || !(opts.grid_r_max > opts.grid_r_min) ||
      !(opts.grid_r_min > 0.0))
    throw InputError("build_truncated_field: invalid sampling grid");
  const auto* oracles = gradient_field.gradient_oracles();
  if (!oracles || gradient_field.variant() != PlanarField::Variant::Gradient)
    throw InputError("build_truncated_field: expects a Gradient field with a control oracle");
  if (gradient_field.is_shifted())
    throw InputError("build_truncated_field: truncate before shifting");

  TruncatedData data{*oracles, R, 0.0, 0.0, ""};

  // Sampled validation of xi > 0 and |grad G| <= xi(G), plus sup estimate of
  // |g_hat| over a radial-angular grid; refined 2x as a stability check. The
  // coarse scan is followed by a local bisection polish around the argmax so
  // the estimate does not depend on a grid line hitting the peak.
  auto value_at = [&](double r, double th) {
    const Point2 u = unit_at(th) * r;
    const double s = data.base.potential(u);
    const double xi = data.base.control(s);
    if (!(xi > 0.0)) throw ControlError("build_truncated_field: xi(G(u)) <= 0 at u=" + point_str(u));
    const double gn = data.base.gradient(u).norm();
    if (gn > xi * (1.0 + opts.control_slack))
      throw ControlError("build_truncated_field: control inequality |grad G| <= xi(G) violated at u=" +
                         point_str(u) + " (|grad G|=" + std::to_string(gn) + ", xi=" + std::to_string(xi) + ")");
    return gn * phi_prime_blend(s, R, data.base.control);
  };
  auto scan = [&](int nr, int na) {
    double sup = 0.0;
    double best_r = 0.0, best_th = 0.0;
    auto radius_of = [&](int i) {
      return (i <= 0) ? 0.0
                      : opts.grid_r_min * std::pow(opts.grid_r_max / opts.grid_r_min,
                                                   static_cast<double>(i - 1) / (nr - 1));
    };
    for (int i = 0; i <= nr; ++i) {
      const double r = radius_of(i);
      for (int j = 0; j < na; ++j) {
        const double th = kTwoPi * j / na;
        const double v = value_at(r, th);
        if (v > sup) {
          sup = v;
          best_r = r;
          best_th = th;
        }
      }
    }
    double r_lo = std::max(best_r / 1.3, 0.0), r_hi = best_r * 1.3 + opts.grid_r_min;
    double t_lo = best_th - kTwoPi / na, t_hi = best_th + kTwoPi / na;
    for (int round = 0; round < 24; ++round) {
      for (int a = 0; a <= 8; ++a)
        for (int b = 0; b <= 8; ++b) {
          const double r = r_lo + (r_hi - r_lo) * a / 8.0;
          const double th = t_lo + (t_hi - t_lo) * b / 8.0;
          const double v = value_at(r, th);
          if (v > sup) {
            sup = v;
            best_r = r;
            best_th = th;
          }
        }
      const double dr = (r_hi - r_lo) / 4.0, dt = (t_hi - t_lo) / 4.0;
      r_lo = std::max(best_r - dr, 0.0);
      r_hi = best_r + dr;
      t_lo = best_th - dt;
      t_hi = best_th + dt;
    }
    return sup;
  };
  data.sup_estimate = scan(opts.grid_radii, opts.grid_angles);
  data.sup_refined = scan(2 * opts.grid_radii, 2 * opts.grid_angles);
  data.sup_estimate = std::max(data.sup_estimate, data.sup_refined);
  {
    std::ostringstream os;
    os << "grid estimate (" << opts.grid_radii << "x" << opts.grid_angles << " to r=" << opts.grid_r_max
       << ", 2x refinement agreed to "
       << std::abs(data.sup_refined - data.sup_estimate) / std::max(data.sup_estimate, 1e-300) << ")";
    data.grid_note = os.str();
  }

  return PlanarField(std::make_shared<PlanarField::Impl>(PlanarField::Impl{std::move(data)}));
}

void check_gradient_consistency(const PlanarField& field, int samples, double radius, double step,
                                double rel_tol) {
  if (!field.has_potential()) throw InputError("gradient consistency: field has no potential");
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < samples; ++i) {
    const double r = radius * std::sqrt(unif(rng));
    const double th = kTwoPi * unif(rng);
    const Point2 u = unit_at(th) * r;
    const Point2 g = field(u);
    const Point2 fd{(field.potential({u.x + step, u.y}) - field.potential({u.x - step, u.y})) / (2.0 * step),
                    (field.potential({u.x, u.y + step}) - field.potential({u.x, u.y - step})) / (2.0 * step)};
    const double err = (g - fd).norm() / std::max(g.norm(), 1.0);
    if (!(err < rel_tol)) {
      std::ostringstream os;
      os << "gradient inconsistent with potential at u=" << point_str(u) << ": field " << point_str(g)
         << " vs finite difference " << point_str(fd) << " (relative error " << err << ")";
      throw InputError(os.str());
    }
  }
}

}  // namespace pwind
