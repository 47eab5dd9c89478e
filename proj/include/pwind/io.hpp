#ifndef PWIND_IO_HPP
#define PWIND_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pwind/solver.hpp"

namespace pwind {

// CSV. Numbers are printed with 17 significant digits so outputs are
// reproducible bit-for-bit.
std::string format_double(double v);
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::string& path);
void write_curve_csv(const std::string& path, const std::vector<std::pair<double, Point2>>& samples);

// Self-contained SVG 1.1 polyline plots; viewport from data bounds plus 5%.
struct SvgMarker {
  Point2 at;
  std::string color = "#d62728";
  std::string label;
};
void write_svg_curve(const std::string& path, const std::vector<std::vector<Point2>>& polylines,
                     const std::vector<SvgMarker>& markers = {}, int size_px = 800);

// JSON serialization of the result types (deterministic field order).
nlohmann::json to_json(const Point2& p);
nlohmann::json to_json(const WindingResult& r);
nlohmann::json to_json(const RadiusCertificate& c);
nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const PeriodicSolution& s);
nlohmann::json to_json(const SolveResult& r);
nlohmann::json to_json(const FtaResult& r);
nlohmann::json to_json(const ExpDemoReport& r);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace pwind

#endif
