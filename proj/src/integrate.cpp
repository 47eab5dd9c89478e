#include "pwind/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pwind/errors.hpp"

namespace pwind {

Rhs make_rhs(const ProblemSpec& problem) {
  const PlanarField field = problem.field;
  const Forcing forcing = problem.forcing;
  return [field, forcing](double t, Point2 u) { return field(u) + forcing(t); };
}

Point2 Trajectory::interpolate(double t) const {
  if (times.empty()) throw InputError("trajectory: empty");
  if (t <= times.front()) return states.front();
  if (t >= times.back()) return states.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - times.begin());
  const double w = (t - times[i - 1]) / (times[i] - times[i - 1]);
  return states[i - 1] * (1.0 - w) + states[i] * w;
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double kC2 = 1.0 / 5, kC3 = 3.0 / 10, kC4 = 4.0 / 5, kC5 = 8.0 / 9;
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                 kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192, kB5 = -2187.0 / 6784,
                 kB6 = 11.0 / 84;
// b - b_hat: the embedded 4th-order error weights.
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920, kE5 = -17253.0 / 339200,
                 kE6 = 22.0 / 525, kE7 = -1.0 / 40;

struct StepperStats {
  long accepted = 0;
  long rejected = 0;
};

template <class Record>
Point2 run_rk45(const Rhs& rhs, double T, Point2 u0, const IntegratorConfig& cfg, StepperStats& stats,
                Record&& record) {
  double t = 0.0;
  Point2 u = u0;
  record(0.0, u);
  Point2 k1 = rhs(t, u);
  double h = std::min(T, std::max(T / 100.0, 1.0e-12 * T));
  long steps = 0;
  const double h_floor = 16.0 * std::numeric_limits<double>::epsilon() * T;
  bool last = false;

  while (t < T) {
    if (++steps > cfg.max_steps)
      throw IntegrationError("integration exceeded max_steps=" + std::to_string(cfg.max_steps));
    if (t + h >= T) {
      h = T - t;
      last = true;
    } else {
      last = false;
    }
    if (h < h_floor && !last)
      throw IntegrationError("integration step underflow at t=" + std::to_string(t));

    const Point2 k2 = rhs(t + kC2 * h, u + k1 * (kA21 * h));
    const Point2 k3 = rhs(t + kC3 * h, u + (k1 * kA31 + k2 * kA32) * h);
    const Point2 k4 = rhs(t + kC4 * h, u + (k1 * kA41 + k2 * kA42 + k3 * kA43) * h);
    const Point2 k5 = rhs(t + kC5 * h, u + (k1 * kA51 + k2 * kA52 + k3 * kA53 + k4 * kA54) * h);
    const Point2 k6 = rhs(t + h, u + (k1 * kA61 + k2 * kA62 + k3 * kA63 + k4 * kA64 + k5 * kA65) * h);
    const Point2 u_new = u + (k1 * kB1 + k3 * kB3 + k4 * kB4 + k5 * kB5 + k6 * kB6) * h;
    const Point2 k7 = rhs(t + h, u_new);  // FSAL
    const Point2 err_v = (k1 * kE1 + k3 * kE3 + k4 * kE4 + k5 * kE5 + k6 * kE6 + k7 * kE7) * h;

    const double scx = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(u.x), std::abs(u_new.x));
    const double scy = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(u.y), std::abs(u_new.y));
    const double ex = err_v.x / scx, ey = err_v.y / scy;
    const double err = std::sqrt(0.5 * (ex * ex + ey * ey));

    if (err <= 1.0) {
      t = last ? T : t + h;
      u = u_new;
      k1 = k7;
      ++stats.accepted;
      record(t, u);
    } else {
      ++stats.rejected;
      last = false;
    }
    const double factor = (err == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h = std::min(h * factor, T);
  }
  return u;
}

template <class Record>
Point2 run_rk4(const Rhs& rhs, double T, Point2 u0, const IntegratorConfig& cfg, StepperStats& stats,
               Record&& record) {
  const long n = std::max<long>(1, std::lround(std::ceil(T / cfg.step)));
  if (n > cfg.max_steps) throw IntegrationError("RK4 step count exceeds max_steps");
  const double h = T / static_cast<double>(n);
  Point2 u = u0;
  record(0.0, u);
  for (long i = 0; i < n; ++i) {
    const double t = T * static_cast<double>(i) / static_cast<double>(n);
    const Point2 k1 = rhs(t, u);
    const Point2 k2 = rhs(t + 0.5 * h, u + k1 * (0.5 * h));
    const Point2 k3 = rhs(t + 0.5 * h, u + k2 * (0.5 * h));
    const Point2 k4 = rhs(t + h, u + k3 * h);
    u += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    ++stats.accepted;
    record(i + 1 == n ? T : T * static_cast<double>(i + 1) / static_cast<double>(n), u);
  }
  return u;
}

void validate(const IntegratorConfig& cfg, double T, Point2 u0) {
  if (!(T > 0.0)) throw InputError("integrate: period must be positive");
  if (!u0.is_finite()) throw InputError("integrate: non-finite initial point");
  if (cfg.method == IntegratorConfig::Method::RK4) {
    if (!(cfg.step > 0.0)) throw InputError("integrate: RK4 step must be positive");
  } else {
    if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0))
      throw InputError("integrate: tolerances must be positive");
  }
  if (cfg.max_steps <= 0) throw InputError("integrate: max_steps must be positive");
}

}  // namespace

Trajectory integrate_rhs(const Rhs& rhs, double T, Point2 u0, const IntegratorConfig& config) {
  validate(config, T, u0);
  Trajectory traj;
  traj.config = config;
  StepperStats stats;
  auto record = [&](double t, Point2 u) {
    traj.times.push_back(t);
    traj.states.push_back(u);
  };
  if (config.method == IntegratorConfig::Method::RK45)
    run_rk45(rhs, T, u0, config, stats, record);
  else
    run_rk4(rhs, T, u0, config, stats, record);
  traj.accepted_steps = stats.accepted;
  traj.rejected_steps = stats.rejected;
  return traj;
}

Trajectory integrate(const ProblemSpec& problem, Point2 u0, const IntegratorConfig& config) {
  return integrate_rhs(make_rhs(problem), problem.period(), u0, config);
}

Point2 flow_endpoint(const Rhs& rhs, double T, Point2 u0, const IntegratorConfig& config) {
  validate(config, T, u0);
  StepperStats stats;
  auto no_record = [](double, Point2) {};
  if (config.method == IntegratorConfig::Method::RK45)
    return run_rk45(rhs, T, u0, config, stats, no_record);
  return run_rk4(rhs, T, u0, config, stats, no_record);
}

namespace {

double trapezoid(const std::vector<double>& t, const std::vector<double>& w, std::size_t stride) {
  double acc = 0.0;
  std::size_t prev = 0;
  for (std::size_t i = stride; i < t.size(); i += stride) {
    acc += 0.5 * (w[prev] + w[i]) * (t[i] - t[prev]);
    prev = i;
  }
  if (prev + 1 != t.size()) acc += 0.5 * (w[prev] + w.back()) * (t.back() - t[prev]);
  return acc;
}

}  // namespace

double l2_norm_derivative(const Trajectory& traj, const Rhs& rhs) {
  if (traj.times.size() < 2) throw InputError("l2_norm_derivative: trajectory has fewer than 2 nodes");
  std::vector<double> w(traj.times.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = rhs(traj.times[i], traj.states[i]).norm_sq();
  const double fine = trapezoid(traj.times, w, 1);
  const double coarse = trapezoid(traj.times, w, 2);
  const double richardson = fine + (fine - coarse) / 3.0;
  return std::sqrt(std::max(richardson, 0.0));
}

double l2_norm_derivative(const Trajectory& traj, const ProblemSpec& problem) {
  return l2_norm_derivative(traj, make_rhs(problem));
}

double l2_norm_forcing(const Forcing& p) { return p.l2_norm(); }

}  // namespace pwind
