#include "pwind/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "pwind/errors.hpp"

namespace pwind {

ShootingSystem make_system(const ProblemSpec& problem, const IntegratorConfig& config) {
  ShootingSystem s;
  s.rhs = make_rhs(problem);
  s.period = problem.period();
  const PlanarField field = problem.field;
  s.field = [field](Point2 u) { return field(u); };
  s.integrator = config;
  return s;
}

Point2 poincare_map(const ShootingSystem& system, Point2 u0) {
  return flow_endpoint(system.rhs, system.period, u0, system.integrator);
}

Point2 poincare_map(const ProblemSpec& problem, Point2 u0, const IntegratorConfig& config) {
  return poincare_map(make_system(problem, config), u0);
}

Point2 displacement(const ShootingSystem& system, Point2 u0) { return poincare_map(system, u0) - u0; }

Point2 displacement(const ProblemSpec& problem, Point2 u0, const IntegratorConfig& config) {
  return displacement(make_system(problem, config), u0);
}

MapOracle displacement_map(const ShootingSystem& system, ExecMode exec) {
  MapOracle m;
  m.eval = [system](Point2 u) { return displacement(system, u); };
  m.eval_batch = [system, exec](const std::vector<Point2>& pts, ExecMode mode) {
    return batch_map(pts, mode == ExecMode::Serial ? mode : exec,
                     [&system](Point2 u) { return displacement(system, u); });
  };
  return m;
}

AprioriBound apriori_bound(const ProblemSpec& problem) {
  const SupNorm sup = problem.field.sup_norm();
  const double T = problem.period();
  AprioriBound b;
  if (sup.bounded()) {
    b.method = AprioriBound::Method::BoundedField;
    b.M = T * (*sup.value + problem.forcing.sup_norm_bound());
    b.note = "T (||g||_inf + ||p||_inf bound); " + sup.method;
    return b;
  }
  if (problem.field.is_gradient_type()) {
    b.method = AprioriBound::Method::GradientL2;
    b.M = std::sqrt(T) * problem.forcing.zero_mean_part().l2_norm();
    b.note = "sqrt(T) ||p - mean p||_L2; valid for the T-periodic solutions";
    return b;
  }
  throw InputError("no a priori bound available: field unbounded and not gradient-type");
}

struct DisplacementCurve::State {
  ShootingSystem system;
  double radius = 1.0;
  CurveNormalization normalization = CurveNormalization::Raw;
  Point2 c;
  double denom_floor = 1.0e-12;
  std::map<double, Point2> cache;
  std::mutex mutex;

  Point2 compute(double theta) const {
    const Point2 u0 = unit_at(theta) * radius;
    const Point2 disp = flow_endpoint(system.rhs, system.period, u0, system.integrator) - u0;
    if (normalization == CurveNormalization::Raw) return disp;
    const double den = (system.field(u0) - c).norm();
    if (den < denom_floor) {
      std::ostringstream os;
      os << "vanishing denominator at theta=" << theta << ": |g(r e^{i theta}) - c| = " << den;
      throw DenominatorError(os.str());
    }
    return disp / den;
  }
};

DisplacementCurve::DisplacementCurve(ShootingSystem system, double radius,
                                     CurveNormalization normalization, Point2 normalization_c,
                                     double denom_floor) {
  if (!(radius > 0.0)) throw InputError("displacement curve: radius must be positive");
  state_ = std::make_shared<State>();
  state_->system = std::move(system);
  state_->radius = radius;
  state_->normalization = normalization;
  state_->c = normalization_c;
  state_->denom_floor = denom_floor;
}

DisplacementCurve::DisplacementCurve(const ProblemSpec& problem, double radius,
                                     CurveNormalization normalization, const IntegratorConfig& config,
                                     double denom_floor)
    : DisplacementCurve(make_system(problem, config), radius, normalization,
                        -problem.forcing.mean(), denom_floor) {}

Point2 DisplacementCurve::operator()(double theta) const {
  {
    std::lock_guard<std::mutex> lock(state_->mutex);
    const auto it = state_->cache.find(theta);
    if (it != state_->cache.end()) return it->second;
  }
  const Point2 v = state_->compute(theta);
  std::lock_guard<std::mutex> lock(state_->mutex);
  return state_->cache.emplace(theta, v).first->second;
}

CurveOracle DisplacementCurve::as_oracle(ExecMode exec) const {
  auto state = state_;
  CurveOracle c;
  c.eval = [state](double theta) { return DisplacementCurve{state}(theta); };
  c.eval_batch = [state, exec](const std::vector<double>& thetas, ExecMode mode) {
    // Compute cache misses in parallel into their own slots, then insert
    // serially: single writer per key, values independent of scheduling.
    std::vector<Point2> out(thetas.size());
    std::vector<std::size_t> misses;
    {
      std::lock_guard<std::mutex> lock(state->mutex);
      for (std::size_t i = 0; i < thetas.size(); ++i) {
        const auto it = state->cache.find(thetas[i]);
        if (it != state->cache.end())
          out[i] = it->second;
        else
          misses.push_back(i);
      }
    }
    std::vector<Point2> fresh(misses.size());
    const ExecMode m = mode == ExecMode::Serial ? mode : exec;
    for_each_index_capturing(misses.size(), m,
                             [&](std::size_t j) { fresh[j] = state->compute(thetas[misses[j]]); });
    {
      std::lock_guard<std::mutex> lock(state->mutex);
      for (std::size_t j = 0; j < misses.size(); ++j) {
        out[misses[j]] = state->cache.emplace(thetas[misses[j]], fresh[j]).first->second;
      }
    }
    return out;
  };
  return c;
}

DisplacementCurve::DisplacementCurve(std::shared_ptr<State> s) : state_(std::move(s)) {}

double DisplacementCurve::radius() const { return state_->radius; }
CurveNormalization DisplacementCurve::normalization() const { return state_->normalization; }
Point2 DisplacementCurve::normalization_constant() const { return state_->c; }

DisplacementCurve displacement_curve(const ProblemSpec& problem, double radius,
                                     CurveNormalization normalization, const IntegratorConfig& config) {
  return DisplacementCurve(problem, radius, normalization, config);
}

namespace {

struct RadiusAttempt {
  bool success = false;
  double margin = 0.0;
  double limit_min = 0.0;
  double sup_diff = 0.0;
  std::size_t rounds = 0;
  std::vector<double> thetas;
};

// Checks sup |gamma - B| < min |B| on an adaptive sample, refining while the
// neighbor variation of either curve exceeds variation_frac * margin.
// Refinement can only shrink the margin, so a nonpositive margin fails the
// radius immediately.
RadiusAttempt try_radius(const CurveOracle& gamma, const CurveOracle& limit_scaled,
                         const RadiusConfig& cfg) {
  RadiusAttempt at;
  const std::size_t n0 = std::max<std::size_t>(cfg.initial_samples, 8);
  std::vector<double> thetas(n0 + 1);
  for (std::size_t i = 0; i <= n0; ++i) thetas[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(n0);
  std::vector<Point2> g = gamma.batch(thetas, cfg.exec);
  std::vector<Point2> b = limit_scaled.batch(thetas, cfg.exec);
  std::size_t evals = thetas.size();

  while (true) {
    double limit_min = b[0].norm(), sup_diff = 0.0;
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      limit_min = std::min(limit_min, b[i].norm());
      sup_diff = std::max(sup_diff, distance(g[i], b[i]));
    }
    if (limit_min <= 0.0)
      throw InputError("select_radius: limit curve vanishes on the sample (condition 1 failure)");
    at.margin = limit_min - sup_diff;
    at.limit_min = limit_min;
    at.sup_diff = sup_diff;
    if (at.margin <= 0.0) {
      at.success = false;
      at.thetas = std::move(thetas);
      return at;
    }

    std::vector<std::size_t> split_after;
    for (std::size_t i = 0; i + 1 < thetas.size(); ++i) {
      const double vg = distance(g[i], g[i + 1]);
      const double vb = distance(b[i], b[i + 1]);
      if (std::max(vg, vb) > cfg.variation_frac * at.margin) split_after.push_back(i);
    }
    if (split_after.empty() || at.rounds >= cfg.max_rounds) {
      at.success = split_after.empty();
      at.thetas = std::move(thetas);
      return at;
    }
    if (evals + split_after.size() > cfg.eval_budget) {
      at.success = false;
      at.thetas = std::move(thetas);
      return at;
    }

    std::vector<double> mids(split_after.size());
    for (std::size_t j = 0; j < split_after.size(); ++j)
      mids[j] = 0.5 * (thetas[split_after[j]] + thetas[split_after[j] + 1]);
    const std::vector<Point2> mg = gamma.batch(mids, cfg.exec);
    const std::vector<Point2> mb = limit_scaled.batch(mids, cfg.exec);
    evals += mids.size();
    ++at.rounds;

    std::vector<double> nt;
    std::vector<Point2> ng, nb;
    nt.reserve(thetas.size() + mids.size());
    std::size_t j = 0;
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      nt.push_back(thetas[i]);
      ng.push_back(g[i]);
      nb.push_back(b[i]);
      if (j < split_after.size() && split_after[j] == i) {
        nt.push_back(mids[j]);
        ng.push_back(mg[j]);
        nb.push_back(mb[j]);
        ++j;
      }
    }
    thetas = std::move(nt);
    g = std::move(ng);
    b = std::move(nb);
  }
}

}  // namespace

RadiusCertificate select_radius(const ShootingSystem& system, const CurveOracle& limit_curve,
                                CurveNormalization normalization, Point2 normalization_c,
                                const RadiusConfig& config) {
  if (!(config.r_start > 0.0)) throw InputError("select_radius: r_start must be positive");
  const double T = system.period;
  CurveOracle scaled;
  scaled.eval = [limit_curve, T](double th) { return limit_curve.eval(th) * T; };
  scaled.eval_batch = [limit_curve, T](const std::vector<double>& ths, ExecMode mode) {
    std::vector<Point2> v = limit_curve.batch(ths, mode);
    for (Point2& p : v) p = p * T;
    return v;
  };

  for (double r = config.r_start; r <= config.r_max; r *= 2.0) {
    DisplacementCurve curve(system, r, normalization, normalization_c);
    const RadiusAttempt at = try_radius(curve.as_oracle(config.exec), scaled, config);
    if (at.success && at.margin > 0.0) {
      RadiusCertificate cert;
      cert.radius = r;
      cert.margin = at.margin;
      cert.refinement_depth = at.rounds;
      cert.normalization = normalization;
      cert.normalization_constant = normalization_c;
      cert.samples = at.thetas;
      cert.limit_min = at.limit_min;
      cert.sup_diff = at.sup_diff;
      return cert;
    }
  }
  std::ostringstream os;
  os << "Rouche radius not found: doubling from " << config.r_start << " reached " << config.r_max
     << " without certifying the inequality";
  throw RadiusSearchError(os.str());
}

RadiusCertificate select_radius(const ProblemSpec& problem, const CurveOracle& limit_curve,
                                CurveNormalization normalization, const RadiusConfig& config,
                                const IntegratorConfig& integrator) {
  return select_radius(make_system(problem, integrator), limit_curve, normalization,
                       -problem.forcing.mean(), config);
}

}  // namespace pwind
