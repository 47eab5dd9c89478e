#ifndef PWIND_INTEGRATE_HPP
#define PWIND_INTEGRATE_HPP

#include <functional>
#include <vector>

#include "pwind/problem.hpp"

namespace pwind {

struct IntegratorConfig {
  enum class Method { RK4, RK45 };
  Method method = Method::RK45;
  double step = 1.0e-2;  // RK4 fixed step
  double abs_tol = 1.0e-10;
  double rel_tol = 1.0e-10;
  long max_steps = 1000000;

  IntegratorConfig tightened(double factor) const {
    IntegratorConfig c = *this;
    c.abs_tol /= factor;
    c.rel_tol /= factor;
    c.step /= factor;
    return c;
  }
};

/// Right-hand side u' = rhs(t, u); may throw FieldOverflowError.
using Rhs = std::function<Point2(double, Point2)>;

Rhs make_rhs(const ProblemSpec& problem);

/// Accepted integration nodes over [0, T]; t strictly increasing with
/// endpoints exactly 0 and T. Values between nodes are linear interpolation
/// only (no dense output).
struct Trajectory {
  std::vector<double> times;
  std::vector<Point2> states;
  IntegratorConfig config;
  long accepted_steps = 0;
  long rejected_steps = 0;

  double period() const { return times.empty() ? 0.0 : times.back(); }
  Point2 front() const { return states.front(); }
  Point2 back() const { return states.back(); }
  Point2 interpolate(double t) const;
};

/// Integrates u' = g(u) + p(t) from u0 over [0, T]. Throws IntegrationError
/// (max steps, step underflow) or FieldOverflowError.
Trajectory integrate(const ProblemSpec& problem, Point2 u0, const IntegratorConfig& config = {});
Trajectory integrate_rhs(const Rhs& rhs, double T, Point2 u0, const IntegratorConfig& config = {});

/// Endpoint u(T) without storing nodes; the workhorse behind the Poincare map.
Point2 flow_endpoint(const Rhs& rhs, double T, Point2 u0, const IntegratorConfig& config = {});

/// (int_0^T |g(u(t)) + p(t)|^2 dt)^{1/2} by trapezoid on the accepted nodes
/// with one Richardson extrapolation against the half-resolution node set.
double l2_norm_derivative(const Trajectory& traj, const ProblemSpec& problem);
double l2_norm_derivative(const Trajectory& traj, const Rhs& rhs);

/// Closed-form ||p||_{L2([0,T])} from the trigonometric coefficients.
double l2_norm_forcing(const Forcing& p);

}  // namespace pwind

#endif
