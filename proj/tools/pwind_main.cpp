// pwind: periodic solutions of forced planar systems u' = g(u) + p(t) by
// shooting and winding numbers. Subcommands cover integration, Poincare and
// displacement maps, displacement curves, certified winding numbers,
// Landesman-Lazer type condition checks, the periodic-solution pipeline,
// polynomial root recovery, and the exponential counterexample.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pwind/conditions.hpp"
#include "pwind/errors.hpp"
#include "pwind/io.hpp"
#include "pwind/solver.hpp"

using namespace pwind;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitViolated = 3;
constexpr int kExitInconclusive = 4;

struct RunConfig {
  std::string problem_path;
  std::string out_dir = "pwind-out";
  std::vector<std::string> overrides;
  SolverConfig solver;
};

using Setter = std::function<void(SolverConfig&, const std::string&)>;

double parse_double(const std::string& v) {
  std::size_t pos = 0;
  const double x = std::stod(v, &pos);
  if (pos != v.size()) throw InputError("not a number: '" + v + "'");
  return x;
}

long parse_long(const std::string& v) {
  std::size_t pos = 0;
  const long x = std::stol(v, &pos);
  if (pos != v.size()) throw InputError("not an integer: '" + v + "'");
  return x;
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"integrator.method",
       [](SolverConfig& c, const std::string& v) {
         if (v == "rk4") c.integrator.method = IntegratorConfig::Method::RK4;
         else if (v == "rk45") c.integrator.method = IntegratorConfig::Method::RK45;
         else throw InputError("integrator.method must be rk4 or rk45");
       }},
      {"integrator.step", [](SolverConfig& c, const std::string& v) { c.integrator.step = parse_double(v); }},
      {"integrator.abs_tol",
       [](SolverConfig& c, const std::string& v) { c.integrator.abs_tol = parse_double(v); }},
      {"integrator.rel_tol",
       [](SolverConfig& c, const std::string& v) { c.integrator.rel_tol = parse_double(v); }},
      {"integrator.max_steps",
       [](SolverConfig& c, const std::string& v) { c.integrator.max_steps = parse_long(v); }},
      {"winding.budget",
       [](SolverConfig& c, const std::string& v) { c.winding.budget = static_cast<std::size_t>(parse_long(v)); }},
      {"winding.initial_samples",
       [](SolverConfig& c, const std::string& v) {
         c.winding.initial_samples = static_cast<std::size_t>(parse_long(v));
       }},
      {"winding.pole_floor_rel",
       [](SolverConfig& c, const std::string& v) { c.winding.pole_floor_rel = parse_double(v); }},
      {"winding.residue_tol",
       [](SolverConfig& c, const std::string& v) { c.winding.residue_tol = parse_double(v); }},
      {"radius.r_start", [](SolverConfig& c, const std::string& v) { c.radius.r_start = parse_double(v); }},
      {"radius.r_max", [](SolverConfig& c, const std::string& v) { c.radius.r_max = parse_double(v); }},
      {"radius.variation_frac",
       [](SolverConfig& c, const std::string& v) { c.radius.variation_frac = parse_double(v); }},
      {"conditions.ladder",
       [](SolverConfig& c, const std::string& v) {
         std::vector<double> ladder;
         std::stringstream ss(v);
         std::string item;
         while (std::getline(ss, item, ',')) ladder.push_back(parse_double(item));
         c.conditions.ladder = std::move(ladder);
       }},
      {"conditions.conv_tol",
       [](SolverConfig& c, const std::string& v) { c.conditions.conv_tol = parse_double(v); }},
      {"conditions.margin_floor",
       [](SolverConfig& c, const std::string& v) { c.conditions.margin_floor = parse_double(v); }},
      {"conditions.theta_grid",
       [](SolverConfig& c, const std::string& v) { c.conditions.theta_grid = static_cast<int>(parse_long(v)); }},
      {"solver.min_box", [](SolverConfig& c, const std::string& v) { c.min_box = parse_double(v); }},
      {"solver.solve_tol", [](SolverConfig& c, const std::string& v) { c.solve_tol = parse_double(v); }},
      {"solver.periodicity_tol",
       [](SolverConfig& c, const std::string& v) { c.periodicity_tol = parse_double(v); }},
      {"solver.dedupe_radius",
       [](SolverConfig& c, const std::string& v) { c.dedupe_radius = parse_double(v); }},
      {"solver.root_tol", [](SolverConfig& c, const std::string& v) { c.root_tol = parse_double(v); }},
      {"solver.jacobian_step",
       [](SolverConfig& c, const std::string& v) { c.jacobian_step = parse_double(v); }},
      {"solver.l2_slack", [](SolverConfig& c, const std::string& v) { c.l2_slack = parse_double(v); }},
      {"solver.max_depth",
       [](SolverConfig& c, const std::string& v) { c.max_depth = static_cast<int>(parse_long(v)); }},
      {"exec",
       [](SolverConfig& c, const std::string& v) {
         ExecMode mode;
         if (v == "serial") mode = ExecMode::Serial;
         else if (v == "openmp") mode = ExecMode::OpenMP;
         else throw InputError("exec must be serial or openmp");
         c.exec = mode;
         c.winding.exec = mode;
         c.radius.exec = mode;
         c.conditions.exec = mode;
       }},
  };
  return table;
}

void apply_overrides(RunConfig& run) {
  for (const std::string& kv : run.overrides) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos) throw InputError("--set expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const auto it = setters().find(key);
    if (it == setters().end()) {
      std::ostringstream os;
      os << "unknown --set key '" << key << "'. Valid keys:";
      for (const auto& [k, _] : setters()) os << "\n  " << k;
      throw InputError(os.str());
    }
    it->second(run.solver, kv.substr(eq + 1));
  }
  // Propagate the exec choice set on the solver config.
  run.solver.winding.exec = run.solver.exec == ExecMode::Serial ? ExecMode::Serial : run.solver.winding.exec;
}

ProblemSpec load_problem(const RunConfig& run) {
  if (run.problem_path.empty()) throw InputError("--problem <file> is required for this command");
  return load_problem_file(run.problem_path);
}

void ensure_out(const RunConfig& run) { std::filesystem::create_directories(run.out_dir); }

std::string out_path(const RunConfig& run, const std::string& name) {
  return (std::filesystem::path(run.out_dir) / name).string();
}

Point2 parse_point(const std::string& text) {
  double x = 0.0, y = 0.0;
  char comma = 0;
  std::istringstream is(text);
  if (!(is >> x >> comma >> y) || comma != ',') throw InputError("expected 'x,y', got '" + text + "'");
  return {x, y};
}

void write_results(const RunConfig& run, const json& j) {
  write_text_file(out_path(run, "results.json"), j.dump(2) + "\n");
}

int cmd_integrate(const RunConfig& run, const std::string& u0_text) {
  const ProblemSpec prob = load_problem(run);
  const Point2 u0 = parse_point(u0_text);
  ensure_out(run);
  const Trajectory traj = integrate(prob, u0, run.solver.integrator);
  write_trajectory_csv(out_path(run, "trajectory.csv"), traj);
  write_svg_curve(out_path(run, "orbit.svg"), {traj.states}, {{u0, "#d62728", "u0"}});
  json j;
  j["u0"] = to_json(u0);
  j["endpoint"] = to_json(traj.back());
  j["nodes"] = traj.times.size();
  j["accepted_steps"] = traj.accepted_steps;
  j["rejected_steps"] = traj.rejected_steps;
  write_results(run, j);
  std::cout << "integrated over [0, " << format_double(prob.period()) << "]: u(T) = ("
            << format_double(traj.back().x) << ", " << format_double(traj.back().y) << ")\n";
  return kExitOk;
}

int cmd_poincare(const RunConfig& run, const std::string& u0_text) {
  const ProblemSpec prob = load_problem(run);
  const Point2 u0 = parse_point(u0_text);
  ensure_out(run);
  const Point2 P = poincare_map(prob, u0, run.solver.integrator);
  json j;
  j["u0"] = to_json(u0);
  j["P"] = to_json(P);
  j["displacement"] = to_json(P - u0);
  write_results(run, j);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_curve(const RunConfig& run, double radius, bool normalized, int samples) {
  const ProblemSpec prob = load_problem(run);
  ensure_out(run);
  DisplacementCurve curve(prob, radius,
                          normalized ? CurveNormalization::Normalized : CurveNormalization::Raw,
                          run.solver.integrator);
  const CurveOracle oracle = curve.as_oracle(run.solver.exec);
  std::vector<double> thetas(samples + 1);
  for (int i = 0; i <= samples; ++i) thetas[i] = kTwoPi * i / samples;
  const std::vector<Point2> pts = oracle.batch(thetas, run.solver.exec);
  std::vector<std::pair<double, Point2>> rows(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) rows[i] = {thetas[i], pts[i]};
  write_curve_csv(out_path(run, "curve.csv"), rows);
  write_svg_curve(out_path(run, "curve.svg"), {pts}, {{{0.0, 0.0}, "#d62728", "0"}});
  json j;
  j["radius"] = radius;
  j["normalization"] = normalized ? "normalized" : "raw";
  j["normalization_constant"] = to_json(curve.normalization_constant());
  j["samples"] = samples;
  write_results(run, j);
  std::cout << "curve written (" << samples << " samples at radius " << radius << ")\n";
  return kExitOk;
}

int cmd_winding(const RunConfig& run, const std::string& points_file, double radius, bool normalized,
                const std::string& limit, const std::string& pole_text) {
  const Point2 pole = pole_text.empty() ? Point2{0.0, 0.0} : parse_point(pole_text);
  ensure_out(run);
  WindingConfig wc = run.solver.winding;
  wc.keep_samples = true;

  WindingResult result;
  if (!points_file.empty()) {
    // Strict mode: a point list cannot be refined, only accepted or refused.
    std::vector<Point2> pts;
    std::ifstream in(points_file);
    if (!in) throw InputError("cannot open points file: " + points_file);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      double a = 0, b = 0, c = 0;
      if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &a, &b, &c) == 3) pts.push_back({b, c});
      else if (std::sscanf(line.c_str(), "%lf,%lf", &a, &b) == 2) pts.push_back({a, b});
      else throw InputError("points file: malformed row '" + line + "'");
    }
    result = winding_number_strict(pts, pole, wc);
  } else if (radius > 0.0) {
    const ProblemSpec prob = load_problem(run);
    DisplacementCurve curve(prob, radius,
                            normalized ? CurveNormalization::Normalized : CurveNormalization::Raw,
                            run.solver.integrator);
    result = winding_number(curve.as_oracle(run.solver.exec), pole, wc);
  } else if (!limit.empty()) {
    const ProblemSpec prob = load_problem(run);
    const Point2 c = -prob.forcing.mean();
    const CurveOracle oracle = radial_limit_oracle(
        prob.field, limit == "unit" ? LimitNormalization::Unit : LimitNormalization::Raw,
        limit == "unit" ? c : Point2{0.0, 0.0}, run.solver.conditions.ladder.back());
    result = winding_number(oracle, pole, wc);
  } else {
    throw InputError("winding: provide --points, --radius, or --limit raw|unit");
  }

  write_curve_csv(out_path(run, "winding_samples.csv"), result.samples);
  write_results(run, to_json(result));
  std::cout << "winding = " << result.winding << " (" << result.samples_used << " evaluations, min pole distance "
            << format_double(result.min_pole_distance) << ")\n";
  return kExitOk;
}

int cmd_check(const RunConfig& run) {
  const ProblemSpec prob = load_problem(run);
  ensure_out(run);
  const ConditionReport rep = prob.field.sup_norm().bounded()
                                  ? check_nirenberg(prob, run.solver.conditions)
                                  : check_ortega_sanchez(prob, run.solver.conditions);
  const json j = to_json(rep);
  write_results(run, j);
  std::cout << j.dump(2) << "\n";
  switch (rep.verdict) {
    case Verdict::Satisfied: return kExitOk;
    case Verdict::Violated: return kExitViolated;
    default: return kExitInconclusive;
  }
}

int cmd_solve(const RunConfig& run) {
  const ProblemSpec prob = load_problem(run);
  ensure_out(run);
  const SolveResult res = solve_periodic(prob, run.solver);
  write_results(run, to_json(res));

  for (std::size_t i = 0; i < res.solutions.size(); ++i)
    write_trajectory_csv(out_path(run, "solution_" + std::to_string(i) + ".csv"),
                         res.solutions[i].trajectory);

  // Displacement curve at the certified radius with its winding annotation.
  if (res.radius) {
    CapInfo cap;
    const ShootingSystem sys = shooting_system(prob, run.solver, 0.0, &cap);
    DisplacementCurve curve(sys, res.radius->radius, res.radius->normalization,
                            res.radius->normalization_constant);
    const CurveOracle oracle = curve.as_oracle(run.solver.exec);
    WindingConfig wc = run.solver.winding;
    wc.keep_samples = true;
    try {
      const WindingResult w = winding_number(oracle, {0.0, 0.0}, wc);
      std::vector<Point2> pts;
      pts.reserve(w.samples.size());
      for (const auto& [th, p] : w.samples) pts.push_back(p);
      write_svg_curve(out_path(run, "displacement_curve.svg"), {pts},
                      {{{0.0, 0.0}, "#d62728", "winding " + std::to_string(w.winding)}});
    } catch (const Error&) {
      // plot is best-effort; the certificate already records the data
    }
  }

  std::cout << "status: " << to_string(res.status) << ", " << res.solutions.size() << " solution(s)\n";
  for (const auto& s : res.solutions)
    std::cout << "  u0 = (" << format_double(s.u0.x) << ", " << format_double(s.u0.y) << "), residual "
              << format_double(s.residual) << "\n";
  switch (res.status) {
    case SolveStatus::Solutions:
      return res.solutions.empty() ? kExitRuntime : kExitOk;
    case SolveStatus::ConditionsViolated: return kExitViolated;
    case SolveStatus::ConditionsInconclusive: return kExitInconclusive;
    default: return kExitRuntime;
  }
}

int cmd_fta(const RunConfig& run, const std::vector<std::string>& coeff_texts, int expected_distinct) {
  if (coeff_texts.size() < 2) throw InputError("fta: need at least two --coeff entries (degree >= 1)");
  std::vector<std::complex<double>> coeffs;
  for (const std::string& t : coeff_texts) {
    const Point2 p = parse_point(t);
    coeffs.emplace_back(p.x, p.y);
  }
  ensure_out(run);
  const FtaResult res = fta_roots(Polynomial{coeffs}, run.solver, expected_distinct);
  write_results(run, to_json(res));
  std::cout << res.roots.size() << " root(s):\n";
  for (std::size_t i = 0; i < res.roots.size(); ++i)
    std::cout << "  (" << format_double(res.roots[i].x) << ", " << format_double(res.roots[i].y)
              << ")  |f| = " << format_double(res.residuals[i]) << "\n";
  if (res.missing_flagged) {
    std::cout << "warning: fewer distinct roots than expected (" << res.expected_distinct << ")\n";
    return kExitRuntime;
  }
  if (res.roots.empty()) return kExitRuntime;
  return kExitOk;
}

int cmd_demo_exp(const RunConfig& run, double R) {
  ensure_out(run);
  const ExpDemoReport rep = exp_demo(R, run.solver.winding);
  write_results(run, to_json(rep));
  std::vector<Point2> pts;
  pts.reserve(rep.curve.size());
  for (const auto& [th, p] : rep.curve) pts.push_back(p);
  write_svg_curve(out_path(run, "exp_curve.svg"), {pts}, {{{0.0, 0.0}, "#d62728", "0"}});
  std::cout << "R = " << R << ": winding "
            << (rep.winding_certified ? std::to_string(rep.winding) : "uncertified (" + rep.winding_error + ")")
            << ", modulus range [" << format_double(rep.modulus_min) << ", " << format_double(rep.modulus_max)
            << "]\n";
  return rep.winding_certified ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pwind: periodic solutions of planar systems u' = g(u) + p(t) by shooting and winding numbers"};
  app.require_subcommand(1);
  app.fallthrough();  // --problem/--out/--set are accepted after the subcommand

  RunConfig run;
  app.add_option("--problem", run.problem_path, "problem JSON file")->expected(1);
  app.add_option("--out", run.out_dir, "output directory (default pwind-out)");
  app.add_option("--set", run.overrides, "override a config key, e.g. --set integrator.abs_tol=1e-8")
      ->take_all();

  std::string u0_text, points_file, limit, pole_text;
  double radius = 0.0, R = 3.0;
  bool normalized = false;
  int samples = 256, expected_distinct = -1;
  std::vector<std::string> coeff_texts;

  CLI::App* c_int = app.add_subcommand("integrate", "integrate from --u0 over one period");
  c_int->add_option("--u0", u0_text, "initial point x,y")->required();

  CLI::App* c_poi = app.add_subcommand("poincare", "Poincare map and displacement at --u0");
  c_poi->add_option("--u0", u0_text, "initial point x,y")->required();

  CLI::App* c_cur = app.add_subcommand("curve", "displacement curve at a radius");
  c_cur->add_option("--radius", radius, "circle radius")->required();
  c_cur->add_flag("--normalized", normalized, "divide by |g(r e^{i theta}) - c|");
  c_cur->add_option("--samples", samples, "uniform sample count (default 256)");

  CLI::App* c_win = app.add_subcommand("winding", "certified winding number");
  c_win->add_option("--points", points_file, "CSV point list (strict mode, no refinement)");
  c_win->add_option("--radius", radius, "displacement curve radius");
  c_win->add_flag("--normalized", normalized, "normalized displacement curve");
  c_win->add_option("--limit", limit, "radial-limit curve: raw or unit");
  c_win->add_option("--pole", pole_text, "pole x,y (default 0,0)");

  app.add_subcommand("check", "check the Nirenberg / Ortega-Sanchez conditions");
  app.add_subcommand("solve", "locate T-periodic solutions");

  CLI::App* c_fta = app.add_subcommand("fta", "roots of f via periodic orbits of z' = f(conj z)");
  c_fta->add_option("--coeff", coeff_texts, "coefficient re,im; repeat lowest degree first")
      ->required()
      ->take_all();
  c_fta->add_option("--expected-distinct", expected_distinct, "flag missing roots below this count");

  CLI::App* c_exp = app.add_subcommand("demo-exp", "f(z) = e^z curve: zero winding demo");
  c_exp->add_option("--R", R, "circle radius (default 3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    apply_overrides(run);
    if (c_int->parsed()) return cmd_integrate(run, u0_text);
    if (c_poi->parsed()) return cmd_poincare(run, u0_text);
    if (c_cur->parsed()) return cmd_curve(run, radius, normalized, samples);
    if (c_win->parsed()) return cmd_winding(run, points_file, radius, normalized, limit, pole_text);
    if (app.get_subcommand("check")->parsed()) return cmd_check(run);
    if (app.get_subcommand("solve")->parsed()) return cmd_solve(run);
    if (c_fta->parsed()) return cmd_fta(run, coeff_texts, expected_distinct);
    if (c_exp->parsed()) return cmd_demo_exp(run, R);
    std::cerr << "no subcommand\n";
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
