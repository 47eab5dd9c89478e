#include "pwind/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pwind/errors.hpp"

namespace pwind {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open file for writing: " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ostringstream os;
  os << "t,x,y\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    os << format_double(traj.times[i]) << ',' << format_double(traj.states[i].x) << ','
       << format_double(traj.states[i].y) << '\n';
  write_text_file(path, os.str());
}

Trajectory read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open trajectory csv: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,x,y", 0) != 0)
    throw InputError("trajectory csv: expected header 't,x,y' in " + path);
  Trajectory traj;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double t, x, y;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &x, &y) != 3)
      throw InputError("trajectory csv: malformed row '" + line + "'");
    traj.times.push_back(t);
    traj.states.push_back(Point2{x, y});
  }
  if (traj.times.size() < 2) throw InputError("trajectory csv: fewer than two rows");
  return traj;
}

void write_curve_csv(const std::string& path, const std::vector<std::pair<double, Point2>>& samples) {
  std::ostringstream os;
  os << "theta,x,y\n";
  for (const auto& [theta, p] : samples)
    os << format_double(theta) << ',' << format_double(p.x) << ',' << format_double(p.y) << '\n';
  write_text_file(path, os.str());
}

void write_svg_curve(const std::string& path, const std::vector<std::vector<Point2>>& polylines,
                     const std::vector<SvgMarker>& markers, int size_px) {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  bool first = true;
  auto grow = [&](Point2 p) {
    if (first) {
      xmin = xmax = p.x;
      ymin = ymax = p.y;
      first = false;
    } else {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  };
  for (const auto& line : polylines)
    for (Point2 p : line) grow(p);
  for (const auto& m : markers) grow(m.at);
  if (first) {
    xmin = ymin = -1.0;
    xmax = ymax = 1.0;
  }
  const double spanx = std::max(xmax - xmin, 1.0e-12), spany = std::max(ymax - ymin, 1.0e-12);
  const double span = std::max(spanx, spany);
  const double margin = 0.05 * span;
  const double x0 = 0.5 * (xmin + xmax) - 0.5 * span - margin;
  const double y0 = 0.5 * (ymin + ymax) - 0.5 * span - margin;
  const double scale = size_px / (span + 2.0 * margin);
  auto px = [&](Point2 p) {
    return Point2{(p.x - x0) * scale, size_px - (p.y - y0) * scale};  // y up
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_px << "\" height=\"" << size_px
     << "\" viewBox=\"0 0 " << size_px << ' ' << size_px << "\">\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  static const char* kColors[] = {"#1f77b4", "#2ca02c", "#9467bd", "#8c564b"};
  for (std::size_t k = 0; k < polylines.size(); ++k) {
    os << "  <polyline fill=\"none\" stroke=\"" << kColors[k % 4] << "\" stroke-width=\"1.5\" points=\"";
    for (Point2 p : polylines[k]) {
      const Point2 q = px(p);
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.6g,%.6g ", q.x, q.y);
      os << buf;
    }
    os << "\"/>\n";
  }
  for (const auto& m : markers) {
    const Point2 q = px(m.at);
    os << "  <circle cx=\"" << q.x << "\" cy=\"" << q.y << "\" r=\"4\" fill=\"" << m.color << "\"/>\n";
    if (!m.label.empty())
      os << "  <text x=\"" << q.x + 6 << "\" y=\"" << q.y - 6 << "\" font-size=\"12\">" << m.label
         << "</text>\n";
  }
  os << "</svg>\n";
  write_text_file(path, os.str());
}

json to_json(const Point2& p) { return json::array({p.x, p.y}); }

json to_json(const WindingResult& r) {
  json j;
  j["winding"] = r.winding;
  j["min_pole_distance"] = r.min_pole_distance;
  j["max_step_turn"] = r.max_step_turn;
  j["samples_used"] = r.samples_used;
  j["residue"] = r.residue;
  j["curve_scale"] = r.curve_scale;
  return j;
}

json to_json(const RadiusCertificate& c) {
  json j;
  j["radius"] = c.radius;
  j["margin"] = c.margin;
  j["samples"] = c.samples;
  j["refinement_depth"] = c.refinement_depth;
  j["normalization"] = c.normalization == CurveNormalization::Raw ? "raw" : "normalized";
  j["normalization_constant"] = to_json(c.normalization_constant);
  j["limit_min"] = c.limit_min;
  j["sup_diff"] = c.sup_diff;
  j["note"] = "inequality checked on the adaptive sample: numerical evidence, not a proof";
  return j;
}

json to_json(const ConditionReport& r) {
  json j;
  j["condition"] = r.condition;
  j["verdict"] = to_string(r.verdict);
  j["margin"] = r.margin;
  j["winding"] = r.winding_computed ? json(r.winding) : json();
  j["pole"] = to_json(r.pole);
  j["converged"] = r.converged;
  j["analytic_limit"] = r.analytic_limit;
  j["defects"] = r.defects;
  j["ladder"] = r.ladder;
  j["diagnostics"] = r.diagnostics;
  return j;
}

json to_json(const VerificationReport& r) {
  json j;
  j["passed"] = r.passed;
  j["endpoint_gap"] = r.endpoint_gap;
  j["l2_checked"] = r.l2_checked;
  if (r.l2_checked) {
    j["l2_lhs"] = r.l2_lhs;
    j["l2_rhs"] = r.l2_rhs;
  }
  j["note"] = r.note;
  return j;
}

json to_json(const PeriodicSolution& s) {
  json j;
  j["u0"] = to_json(s.u0);
  j["residual"] = s.residual;
  if (s.verification.l2_checked) {
    j["l2_lhs"] = s.verification.l2_lhs;
    j["l2_rhs"] = s.verification.l2_rhs;
  }
  j["box"] = json{{"center", to_json(s.located_box.center)},
                  {"half_width", s.located_box.half_width},
                  {"depth", s.located_box.depth}};
  j["boundary_winding"] = s.boundary_winding;
  return j;
}

json to_json(const SolveResult& r) {
  json j;
  j["status"] = to_string(r.status);
  json sols = json::array();
  for (const auto& s : r.solutions) sols.push_back(to_json(s));
  j["solutions"] = std::move(sols);
  j["conditions"] = to_json(r.conditions);
  j["radius_certificate"] = r.radius ? to_json(*r.radius) : json();
  if (r.cap.applied)
    j["shooting_cap"] = json{{"magnitude", r.cap.magnitude}, {"covered_radius", r.cap.covered_radius}};
  j["subdivision"] = json{{"boxes_examined", r.subdivision.boxes_examined},
                          {"pruned", r.subdivision.pruned},
                          {"candidates", r.subdivision.candidates.size()},
                          {"escalated", r.subdivision.escalated.size()},
                          {"root_winding", r.subdivision.root_winding_defined ? json(r.subdivision.root_winding) : json()},
                          {"partial", r.subdivision.partial}};
  j["diagnostics"] = r.diagnostics;
  return j;
}

json to_json(const FtaResult& r) {
  json j;
  json roots = json::array();
  for (std::size_t i = 0; i < r.roots.size(); ++i)
    roots.push_back(json{{"root", to_json(r.roots[i])}, {"abs_f", r.residuals[i]}});
  j["roots"] = std::move(roots);
  json rej = json::array();
  for (const auto& [p, v] : r.rejected) rej.push_back(json{{"point", to_json(p)}, {"abs_f", v}});
  j["rejected"] = std::move(rej);
  j["missing_flagged"] = r.missing_flagged;
  j["period_used"] = r.period_used;
  j["solve"] = to_json(r.solve);
  return j;
}

json to_json(const ExpDemoReport& r) {
  json j;
  j["R"] = r.R;
  j["winding_certified"] = r.winding_certified;
  j["winding"] = r.winding_certified ? json(r.winding) : json();
  j["winding_error"] = r.winding_error;
  j["winding_stats"] = to_json(r.stats);
  j["modulus_min"] = r.modulus_min;
  j["modulus_max"] = r.modulus_max;
  j["expected_min"] = r.expected_min;
  j["expected_max"] = r.expected_max;
  return j;
}

}  // namespace pwind
