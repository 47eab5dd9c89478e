#include "pwind/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "pwind/errors.hpp"

namespace pwind {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Solutions: return "solutions";
    case SolveStatus::ConditionsViolated: return "conditions-violated";
    case SolveStatus::ConditionsInconclusive: return "conditions-inconclusive";
    case SolveStatus::RadiusNotFound: return "radius-not-found";
    case SolveStatus::NoZeroCertified: return "no-zero-certified";
    case SolveStatus::NonIsolatedSet: return "non-isolated-solution-set";
  }
  return "unknown";
}

namespace {

constexpr double kBoundaryRetryFactors[] = {1.0, 1.05, 0.95, 1.10};

struct BoxWinding {
  int winding = 0;
  bool defined = false;
};

BoxWinding box_boundary_winding(const MapOracle& map, const BoxRegion& box, const WindingConfig& wcfg) {
  for (double factor : kBoundaryRetryFactors) {
    try {
      const WindingResult w = winding_number(boundary_oracle(box.center, box.half_width * factor, map),
                                             Point2{0.0, 0.0}, wcfg);
      return {w.winding, true};
    } catch (const Error&) {
      // retry with the next inflation factor
    }
  }
  return {0, false};
}

bool point_order(Point2 a, Point2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }

// A zero sitting on a shared edge or corner is picked up by every adjacent
// min-box (the inflation retries make their boundaries overlap), so touching
// candidates are one zero cluster: keep the member nearest the cluster
// centroid. Distinct zeros closer than ~2 min_box are below the subdivision's
// resolution either way.
std::vector<std::pair<BoxRegion, int>> cluster_candidates(std::vector<std::pair<BoxRegion, int>> found) {
  const std::size_t n = found.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double touch = 1.05 * (found[i].first.half_width + found[j].first.half_width);
      const Point2 d = found[i].first.center - found[j].first.center;
      if (std::abs(d.x) <= touch && std::abs(d.y) <= touch) parent[find(i)] = find(j);
    }
  std::vector<std::pair<BoxRegion, int>> out;
  std::vector<bool> done(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (done[root]) continue;
    done[root] = true;
    Point2 centroid{0.0, 0.0};
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (find(j) == root) {
        centroid += found[j].first.center;
        ++count;
      }
    centroid = centroid / static_cast<double>(count);
    std::size_t best = i;
    for (std::size_t j = 0; j < n; ++j)
      if (find(j) == root &&
          (distance(found[j].first.center, centroid) < distance(found[best].first.center, centroid) ||
           (distance(found[j].first.center, centroid) == distance(found[best].first.center, centroid) &&
            point_order(found[j].first.center, found[best].first.center))))
        best = j;
    out.push_back(found[best]);
  }
  return out;
}

}  // namespace

SubdivisionResult find_zeros_subdivision(const MapOracle& map, BoxRegion region,
                                         const SolverConfig& config) {
  if (!(region.half_width > 0.0)) throw InputError("subdivision: region half width must be positive");
  SubdivisionResult out;
  WindingConfig wcfg = config.winding;
  wcfg.exec = config.exec;
  // A boundary whose image is below solve_tol everywhere is at the pole for
  // solving purposes; certify nothing there.
  wcfg.scale_floor_abs = std::max(wcfg.scale_floor_abs, config.solve_tol);

  std::vector<BoxRegion> frontier{region};
  std::vector<std::pair<BoxRegion, int>> found;
  bool first_level = true;

  while (!frontier.empty()) {
    // Sibling boxes are independent; windings are computed concurrently and
    // consumed in frontier order so the result is schedule-independent.
    std::vector<BoxWinding> outcome(frontier.size());
    for_each_index_capturing(frontier.size(), config.exec,
                             [&](std::size_t i) { outcome[i] = box_boundary_winding(map, frontier[i], wcfg); });

    std::vector<BoxRegion> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const BoxRegion& box = frontier[i];
      ++out.boxes_examined;
      if (first_level && i == 0) {
        out.root_winding_defined = outcome[i].defined;
        out.root_winding = outcome[i].winding;
      }
      if (!outcome[i].defined) {
        out.escalated.push_back(box);  // kept conservatively, never silently dropped
        continue;
      }
      if (outcome[i].winding == 0) {
        ++out.pruned;
        if (out.pruned_sample.size() < 8) out.pruned_sample.push_back(box);
        continue;
      }
      if (box.half_width <= config.min_box) {
        found.emplace_back(box, outcome[i].winding);
        continue;
      }
      if (box.depth >= config.max_depth) {
        out.partial = true;
        out.escalated.push_back(box);
        continue;
      }
      const double h = 0.5 * box.half_width;
      for (const Point2 off : {Point2{-h, -h}, Point2{h, -h}, Point2{-h, h}, Point2{h, h}})
        next.push_back(BoxRegion{box.center + off, h, box.depth + 1});
    }
    frontier = std::move(next);
    first_level = false;
  }

  found = cluster_candidates(std::move(found));
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return point_order(a.first.center, b.first.center); });
  for (auto& [box, w] : found) {
    out.candidates.push_back(box);
    out.candidate_windings.push_back(w);
  }
  std::sort(out.escalated.begin(), out.escalated.end(),
            [](const BoxRegion& a, const BoxRegion& b) { return point_order(a.center, b.center); });
  return out;
}

PolishResult newton_polish(const MapOracle& map, Point2 u_init, const SolverConfig& config) {
  PolishResult res;
  res.point = u_init;
  Point2 f = map.eval(u_init);
  res.residual = f.norm();
  const double h = config.jacobian_step;

  for (int iter = 0; iter < config.newton_max_iterations; ++iter) {
    res.iterations = iter;
    if (res.residual < config.solve_tol) {
      res.status = PolishResult::Status::Converged;
      return res;
    }
    const Point2 u = res.point;
    const std::vector<Point2> probes{{u.x + h, u.y}, {u.x - h, u.y}, {u.x, u.y + h}, {u.x, u.y - h}};
    const std::vector<Point2> fe = map.batch(probes, config.exec);
    const double a = (fe[0].x - fe[1].x) / (2.0 * h), b = (fe[2].x - fe[3].x) / (2.0 * h);
    const double c = (fe[0].y - fe[1].y) / (2.0 * h), d = (fe[2].y - fe[3].y) / (2.0 * h);

    // 2x2 singular values for the condition estimate.
    const double t1 = a * a + b * b + c * c + d * d;
    const double t2 = std::hypot(a * a + b * b - c * c - d * d, 2.0 * (a * c + b * d));
    const double smax = std::sqrt(0.5 * (t1 + t2));
    const double smin_sq = 0.5 * std::max(t1 - t2, 0.0);
    const double smin = std::sqrt(smin_sq);
    if (!(smin > 0.0) || smax / smin > config.jacobian_cond_limit) {
      res.status = PolishResult::Status::SingularJacobian;
      return res;
    }

    const double det = a * d - b * c;
    const Point2 delta{(-f.x * d + f.y * b) / det, (-f.y * a + f.x * c) / det};

    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= config.newton_max_halvings; ++halving) {
      const Point2 trial = u + delta * lambda;
      const Point2 ft = map.eval(trial);
      if (ft.norm() < res.residual) {
        res.point = trial;
        f = ft;
        res.residual = ft.norm();
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      res.status = PolishResult::Status::NoConvergence;  // polish failed
      return res;
    }
  }
  res.status =
      res.residual < config.solve_tol ? PolishResult::Status::Converged : PolishResult::Status::NoConvergence;
  return res;
}

VerificationReport verify_solution(const ProblemSpec& problem, Point2 u0, const SolverConfig& config) {
  VerificationReport rep;
  try {
    const IntegratorConfig tight = config.integrator.tightened(10.0);
    const Trajectory traj = integrate(problem, u0, tight);
    rep.endpoint_gap = distance(traj.back(), traj.front());
    rep.passed = rep.endpoint_gap <= 10.0 * config.solve_tol;
    if (!rep.passed) rep.note = "verification failed: re-integration residual exceeds 10 x solve_tol";
    if (problem.field.is_gradient_type()) {
      rep.l2_checked = true;
      rep.l2_lhs = l2_norm_derivative(traj, problem);
      rep.l2_rhs = l2_norm_forcing(problem.forcing);
      if (rep.l2_lhs > rep.l2_rhs + config.l2_slack) {
        rep.passed = false;
        rep.note = "verification failed: ||u'||_L2 exceeds ||p||_L2 + slack";
      }
    }
  } catch (const Error& e) {
    rep.passed = false;
    rep.note = std::string("verification failed: ") + e.what();
  }
  return rep;
}

namespace {

struct Surrogate {
  ShootingSystem system;
  CapInfo cap;
};

// Bounded shooting surrogate for the zero-mean reduced problem. Unbounded
// gradient-type fields blow up in finite time from large starts, so the
// Poincare map of the raw field is not globally defined; shooting runs on a
// magnitude-capped copy instead. The cap preserves directions and zeros, and
// is inactive on the ball that contains every T-periodic solution of the
// original problem (no solution is lost); spurious capped-only candidates are
// rejected later by verification against the original field.
Surrogate make_surrogate(const ProblemSpec& reduced, const SolverConfig& config, double region_hint) {
  Surrogate s;
  if (reduced.field.sup_norm().bounded()) {
    s.system = make_system(reduced, config.integrator);
    return s;
  }

  const PlanarField field = reduced.field;
  const double p_inf = reduced.forcing.sup_norm_bound();
  const double M = apriori_bound(reduced).M;
  const double threshold = std::max(4.0 * p_inf, 1.0e-9);

  // Smallest scan radius beyond which |g| clears the threshold (so no
  // periodic solution can wander outside it), from a doubling angular scan.
  // For polynomials a root bound of f + mean(p) is a rigorous floor.
  double r_clear = 0.0;
  for (double r = 1.0; r <= 1.0e6; r *= 2.0) {
    double mn = field(Point2{r, 0.0}).norm();
    for (int j = 1; j < 256; ++j) mn = std::min(mn, field(unit_at(kTwoPi * j / 256) * r).norm());
    if (mn > threshold) {
      r_clear = r;
      break;
    }
  }
  if (const Polynomial* f = field.conjugate_polynomial_coeffs()) {
    std::vector<std::complex<double>> shifted = f->coefficients();
    shifted[0] += std::complex<double>(field.offset().x, field.offset().y);
    const Polynomial fs{shifted};
    r_clear = std::max(r_clear, std::min(fs.cauchy_root_bound(), fs.fujiwara_root_bound()));
  }
  if (r_clear == 0.0) r_clear = std::max(region_hint, 1.0);

  const double covered = r_clear * std::sqrt(2.0) + M + 1.0;
  double cap = 0.0;
  if (const Polynomial* f = field.conjugate_polynomial_coeffs()) {
    cap = f->sup_bound_on_disk(covered) + field.offset().norm();
  } else {
    for (int j = 0; j < 256; ++j) cap = std::max(cap, field(unit_at(kTwoPi * j / 256) * covered).norm());
    cap *= 2.0;
  }
  cap = std::max(cap, 2.0 * threshold);

  const Forcing forcing = reduced.forcing;
  auto capped = [field, cap](Point2 u) {
    Point2 g = field(u);
    const double n = g.norm();
    if (n > cap) g = g * (cap / n);
    return g;
  };
  s.system.rhs = [capped, forcing](double t, Point2 u) { return capped(u) + forcing(t); };
  s.system.period = reduced.period();
  s.system.field = capped;
  s.system.integrator = config.integrator;
  s.cap = CapInfo{true, cap, covered};
  return s;
}

std::mt19937_64 probe_rng() { return std::mt19937_64(0xb0c5a11du); }

}  // namespace

ShootingSystem shooting_system(const ProblemSpec& problem, const SolverConfig& config,
                               double region_hint, CapInfo* cap_out) {
  Surrogate s = make_surrogate(reduce_to_zero_mean(problem), config, region_hint);
  if (cap_out) *cap_out = s.cap;
  return s.system;
}

SolveResult solve_periodic(const ProblemSpec& problem, const SolverConfig& config,
                           std::optional<BoxRegion> region_override) {
  SolveResult out;
  const ProblemSpec reduced = reduce_to_zero_mean(problem);
  const bool bounded = problem.field.sup_norm().bounded();

  out.conditions =
      bounded ? check_nirenberg(problem, config.conditions) : check_ortega_sanchez(problem, config.conditions);
  if (out.conditions.verdict != Verdict::Satisfied) {
    out.status = out.conditions.verdict == Verdict::Violated ? SolveStatus::ConditionsViolated
                                                             : SolveStatus::ConditionsInconclusive;
    out.diagnostics.push_back(std::string("condition check: ") + to_string(out.conditions.verdict) +
                              (out.conditions.diagnostics.empty() ? "" : "; " + out.conditions.diagnostics));
    // Without an explicit region there is nothing certified to search; with
    // one, the caller has pinned the search box and the hunt proceeds for
    // diagnostic value (existence is then not backed by the theorems).
    if (!region_override) return out;
  }

  const double region_hint = region_override ? region_override->half_width : 0.0;
  const Surrogate sur = make_surrogate(reduced, config, region_hint);
  out.cap = sur.cap;

  // Limit curve for the Rouche step: the radial-limit curve of the reduced
  // field (raw for bounded fields, unit-normalized otherwise; analytic for
  // polynomials).
  CurveOracle limit;
  CurveNormalization normalization;
  if (bounded) {
    normalization = CurveNormalization::Raw;
    limit = radial_limit_oracle(reduced.field, LimitNormalization::Raw, {},
                                config.conditions.ladder.back(), config.conditions.denom_floor);
  } else {
    normalization = CurveNormalization::Normalized;
    if (const Polynomial* f = reduced.field.conjugate_polynomial_coeffs())
      limit = analytic_gamma_q_polynomial(*f);
    else
      limit = radial_limit_oracle(reduced.field, LimitNormalization::Unit, {},
                                  config.conditions.ladder.back(), config.conditions.denom_floor);
  }

  if (out.conditions.verdict == Verdict::Satisfied) {
    try {
      out.radius = select_radius(sur.system, limit, normalization, Point2{0.0, 0.0}, config.radius);
    } catch (const Error& e) {
      if (!region_override) {
        out.status = SolveStatus::RadiusNotFound;
        out.diagnostics.push_back(std::string("radius search: ") + e.what());
        return out;
      }
      out.diagnostics.push_back(std::string("radius search skipped: ") + e.what());
    }
  }

  const BoxRegion region =
      region_override ? *region_override : BoxRegion{Point2{0.0, 0.0}, out.radius->radius, 0};
  const MapOracle phi = displacement_map(sur.system, config.exec);
  out.subdivision = find_zeros_subdivision(phi, region, config);

  // Degenerate (non-isolated) fixed-point sets: when the root boundary
  // winding is undefined even after retries, probe random interior points; if
  // most of them polish to mutually distant zeros the fixed points form a
  // continuum and a solution list would be spurious.
  if (!out.subdivision.root_winding_defined) {
    auto rng = probe_rng();
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const int probes = 12;
    std::vector<Point2> zeros;
    for (int i = 0; i < probes; ++i) {
      const Point2 start = region.center + Point2{unif(rng), unif(rng)} * region.half_width;
      try {
        const PolishResult pr = newton_polish(phi, start, config);
        if (pr.status == PolishResult::Status::Converged) zeros.push_back(pr.point);
      } catch (const Error&) {
      }
    }
    double spread = 0.0;
    for (std::size_t i = 0; i < zeros.size(); ++i)
      for (std::size_t j = i + 1; j < zeros.size(); ++j) spread = std::max(spread, distance(zeros[i], zeros[j]));
    if (zeros.size() * 2 > static_cast<std::size_t>(probes) && spread > 10.0 * config.dedupe_radius) {
      out.status = SolveStatus::NonIsolatedSet;
      std::ostringstream os;
      os << "non-isolated solution set: " << zeros.size() << "/" << probes
         << " random interior points polish to zeros spread over " << spread;
      out.diagnostics.push_back(os.str());
      return out;
    }
  }

  if (out.subdivision.root_winding_defined && out.subdivision.root_winding == 0 &&
      out.subdivision.candidates.empty() && out.subdivision.escalated.empty()) {
    out.status = SolveStatus::NoZeroCertified;
    out.diagnostics.push_back("no zero certified in region: root boundary winding is 0");
    return out;
  }

  // Polish every candidate (escalated boxes included: conservative keeps).
  struct Start {
    BoxRegion box;
    int winding = 0;
  };
  std::vector<Start> starts;
  for (std::size_t i = 0; i < out.subdivision.candidates.size(); ++i)
    starts.push_back({out.subdivision.candidates[i], out.subdivision.candidate_windings[i]});
  for (const BoxRegion& b : out.subdivision.escalated) starts.push_back({b, 0});

  std::vector<PolishResult> polished(starts.size());
  std::vector<std::string> polish_errors(starts.size());
  for_each_index(starts.size(), config.exec, [&](std::size_t i) {
    try {
      polished[i] = newton_polish(phi, starts[i].box.center, config);
    } catch (const Error& e) {
      polished[i].status = PolishResult::Status::NoConvergence;
      polish_errors[i] = e.what();
    }
  });

  std::vector<PeriodicSolution> kept;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    if (polished[i].status != PolishResult::Status::Converged) {
      std::ostringstream os;
      os << "polish failed for box at (" << starts[i].box.center.x << ", " << starts[i].box.center.y
         << "), half_width " << starts[i].box.half_width;
      if (!polish_errors[i].empty()) os << ": " << polish_errors[i];
      out.diagnostics.push_back(os.str());
      continue;
    }
    const Point2 u0 = polished[i].point;
    const VerificationReport ver = verify_solution(problem, u0, config);
    if (!ver.passed) {
      std::ostringstream os;
      os << "candidate (" << u0.x << ", " << u0.y << ") rejected: " << ver.note;
      out.diagnostics.push_back(os.str());
      out.rejected_candidates.emplace_back(u0, ver);
      continue;
    }
    PeriodicSolution sol;
    sol.u0 = u0;
    sol.residual = ver.endpoint_gap;
    sol.trajectory = integrate(problem, u0, config.integrator.tightened(10.0));
    sol.located_box = starts[i].box;
    sol.boundary_winding = starts[i].winding;
    sol.verification = ver;
    kept.push_back(std::move(sol));
  }

  // Dedupe: points within dedupe_radius merge, keeping the smallest residual.
  std::stable_sort(kept.begin(), kept.end(),
                   [](const PeriodicSolution& a, const PeriodicSolution& b) { return a.residual < b.residual; });
  std::vector<PeriodicSolution> unique;
  for (auto& sol : kept) {
    bool dup = false;
    for (const auto& u : unique)
      if (distance(sol.u0, u.u0) <= config.dedupe_radius) {
        dup = true;
        break;
      }
    if (!dup) unique.push_back(std::move(sol));
  }
  std::sort(unique.begin(), unique.end(),
            [](const PeriodicSolution& a, const PeriodicSolution& b) { return point_order(a.u0, b.u0); });
  out.solutions = std::move(unique);
  if (!out.solutions.empty() || out.conditions.verdict == Verdict::Satisfied)
    out.status = SolveStatus::Solutions;
  return out;
}

FtaResult fta_roots(const Polynomial& f, const SolverConfig& config, int expected_distinct) {
  if (f.degree() < 1) throw InputError("fta_roots: degree must be >= 1");
  if (std::abs(f.leading()) == 0.0) throw InputError("fta_roots: leading coefficient is zero");

  FtaResult out;
  out.expected_distinct = expected_distinct;

  const double root_bound = f.cauchy_root_bound();
  const double half_width = 1.0 + root_bound;  // 2 + max |a_k / a_n|

  // Period: constants solve the equation for every T, and features of the
  // displacement map scale like e^{lambda T} with lambda the local derivative
  // of the shooting field. Inside the cap's covered ball that is |f'|; in the
  // capped far zone the field is C times a slowly turning direction, with
  // derivative bounded by ~ n C / covered. T keeps lambda T <= 1 on both and
  // clamps the orbit wander C T below the 2-unit margin of the bound's disk.
  // Root accuracy is restored by the per-root re-polish below.
  const PlanarField field = PlanarField::conjugate_polynomial(f);
  CapInfo cap;
  shooting_system(ProblemSpec{field, Forcing::zero(1.0)}, config, half_width, &cap);
  const double covered = std::max(cap.covered_radius, 1.0);
  const double inner_stiffness = f.derivative().sup_bound_on_disk(covered + 2.0);
  const double far_stiffness = f.degree() * cap.magnitude / covered;
  const double stiffness = std::max({1.0, inner_stiffness, far_stiffness});
  out.period_used = std::min({1.0, 1.0 / stiffness, 2.0 / std::max(cap.magnitude, 1.0)});

  const ProblemSpec problem{field, Forcing::zero(out.period_used)};
  out.solve = solve_periodic(problem, config, BoxRegion{Point2{0.0, 0.0}, half_width, 0});

  // Constant solutions z* of z' = f(conj z) satisfy f(conj z*) = 0: the roots
  // of f are the conjugates of the solutions.
  //
  // The subdivision period comes from a coefficient bound over the whole
  // region and can be far smaller than the repulsion rate at a particular
  // root warrants; |Phi| < solve_tol then pins the position only to
  // solve_tol / (T |f'|), and verification at that period can spuriously
  // reject a true root. Every polished candidate (verified or not) is
  // therefore re-polished and re-verified on the flow with the period
  // matched to |f'| at the root, still inside the shooting formulation.
  const Polynomial df = f.derivative();
  std::vector<Point2> starts;
  for (const PeriodicSolution& sol : out.solve.solutions) starts.push_back(sol.u0);
  for (const auto& [point, report] : out.solve.rejected_candidates) starts.push_back(point);

  for (const Point2& start : starts) {
    Point2 u0 = start;
    const double lam = std::abs(df.eval(std::conj(u0.as_complex())));
    const double refine_T = std::min(1.0, 2.0 / std::max(1.0, lam));
    const ProblemSpec refine_problem{problem.field, Forcing::zero(refine_T)};
    bool ok = false;
    try {
      const MapOracle phi = displacement_map(shooting_system(refine_problem, config), config.exec);
      const PolishResult pr = newton_polish(phi, u0, config);
      if (pr.status == PolishResult::Status::Converged) u0 = pr.point;
      ok = verify_solution(refine_problem, u0, config).passed;
    } catch (const Error&) {
      ok = false;
    }
    const Point2 root{u0.x, -u0.y};
    const double fr = std::abs(f.eval(root.as_complex()));
    if (ok && fr < config.root_tol) {
      out.roots.push_back(root);
      out.residuals.push_back(fr);
    } else {
      out.rejected.emplace_back(root, fr);
    }
  }

  // Dedupe after the re-polish: at very small subdivision periods, |Phi| pins
  // the position only to solve_tol / (T |f'|), so distinct phase-1 solutions
  // can re-polish onto the same root.
  {
    std::vector<std::size_t> by_residual(out.roots.size());
    for (std::size_t i = 0; i < by_residual.size(); ++i) by_residual[i] = i;
    std::stable_sort(by_residual.begin(), by_residual.end(),
                     [&](std::size_t a, std::size_t b) { return out.residuals[a] < out.residuals[b]; });
    std::vector<Point2> roots;
    std::vector<double> residuals;
    for (std::size_t i : by_residual) {
      bool dup = false;
      for (const Point2& kept : roots)
        if (distance(out.roots[i], kept) <= config.dedupe_radius) dup = true;
      if (!dup) {
        roots.push_back(out.roots[i]);
        residuals.push_back(out.residuals[i]);
      }
    }
    out.roots = std::move(roots);
    out.residuals = std::move(residuals);
  }

  std::vector<std::size_t> order(out.roots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return point_order(out.roots[a], out.roots[b]); });
  std::vector<Point2> roots;
  std::vector<double> residuals;
  for (std::size_t i : order) {
    roots.push_back(out.roots[i]);
    residuals.push_back(out.residuals[i]);
  }
  out.roots = std::move(roots);
  out.residuals = std::move(residuals);

  if (expected_distinct >= 0 && static_cast<int>(out.roots.size()) < expected_distinct)
    out.missing_flagged = true;
  return out;
}

ExpDemoReport exp_demo(double R, const WindingConfig& config) {
  if (!(R > 0.0)) throw InputError("exp_demo: R must be positive");
  ExpDemoReport rep;
  rep.R = R;
  rep.expected_min = std::exp(-R);
  rep.expected_max = std::exp(R);

  // f(R e^{i theta}) for f = exp: e^{R cos theta} e^{-i R sin theta}.
  const CurveOracle curve = CurveOracle::from_function([R](double theta) {
    const double mod = std::exp(R * std::cos(theta));
    const double arg = -R * std::sin(theta);
    return Point2{mod * std::cos(arg), mod * std::sin(arg)};
  });

  WindingConfig wc = config;
  wc.keep_samples = true;
  try {
    rep.stats = winding_number(curve, Point2{0.0, 0.0}, wc);
    rep.winding = rep.stats.winding;
    rep.winding_certified = true;
  } catch (const WindingError& e) {
    rep.winding_certified = false;
    rep.winding_error = e.what();
  }

  const int n = 4096;  // even: hits theta = 0 and pi exactly, where the modulus peaks
  rep.modulus_min = std::exp(R);
  rep.modulus_max = 0.0;
  rep.curve.reserve(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double th = kTwoPi * j / n;
    const Point2 p = curve.eval(th);
    const double m = p.norm();
    rep.modulus_min = std::min(rep.modulus_min, m);
    rep.modulus_max = std::max(rep.modulus_max, m);
    if (j % 4 == 0) rep.curve.emplace_back(th, p);
  }
  return rep;
}

}  // namespace pwind
