#include "pwind/winding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pwind/errors.hpp"

namespace pwind {

std::vector<Point2> CurveOracle::batch(const std::vector<double>& thetas, ExecMode mode) const {
  if (eval_batch) return eval_batch(thetas, mode);
  return batch_map(thetas, mode, [this](double th) { return eval(th); });
}

CurveOracle CurveOracle::from_function(std::function<Point2(double)> f) {
  CurveOracle c;
  c.eval = std::move(f);
  return c;
}

std::vector<Point2> MapOracle::batch(const std::vector<Point2>& points, ExecMode mode) const {
  if (eval_batch) return eval_batch(points, mode);
  return batch_map(points, mode, [this](Point2 u) { return eval(u); });
}

MapOracle MapOracle::from_function(std::function<Point2(Point2)> f) {
  MapOracle m;
  m.eval = std::move(f);
  return m;
}

namespace {

constexpr double kMaxTurn = kPi / 2.0;

struct Node {
  double theta;
  Point2 point;
  double dist;  // distance to pole
};

double turn_angle(Point2 a, Point2 b, Point2 pole) {
  const Point2 va = a - pole, vb = b - pole;
  return std::atan2(cross(va, vb), dot(va, vb));
}

[[noreturn]] void throw_pole_too_close(double theta, double dist, double floor) {
  std::ostringstream os;
  os << "curve too close to pole - winding undefined at this resolution (theta=" << theta
     << ", distance=" << dist << ", floor=" << floor << ")";
  throw WindingError(WindingError::Kind::PoleTooClose, os.str());
}

WindingResult finish(const std::vector<Node>& nodes, Point2 pole, const WindingConfig& cfg,
                     std::size_t evals, double scale) {
  double total = 0.0;
  double max_turn = 0.0;
  double min_dist = nodes.front().dist;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double t = turn_angle(nodes[i].point, nodes[i + 1].point, pole);
    total += t;
    max_turn = std::max(max_turn, std::abs(t));
    min_dist = std::min(min_dist, nodes[i + 1].dist);
  }
  const double w = total / kTwoPi;
  const double rounded = std::round(w);
  const double residue = std::abs(w - rounded);
  if (residue >= cfg.residue_tol) {
    std::ostringstream os;
    os << "inconsistent turn sum: " << w << " turns is " << residue << " from an integer";
    throw WindingError(WindingError::Kind::InconsistentTurnSum, os.str());
  }
  WindingResult r;
  r.winding = static_cast<int>(rounded);
  r.min_pole_distance = min_dist;
  r.max_step_turn = max_turn;
  r.samples_used = evals;
  r.residue = residue;
  r.curve_scale = scale;
  if (cfg.keep_samples) {
    r.samples.reserve(nodes.size());
    for (const Node& n : nodes) r.samples.emplace_back(n.theta, n.point);
  }
  return r;
}

}  // namespace

WindingResult winding_number(const CurveOracle& curve, Point2 pole, const WindingConfig& config) {
  const std::size_t n0 = std::max<std::size_t>(config.initial_samples, 4);
  std::vector<double> thetas(n0 + 1);
  for (std::size_t i = 0; i <= n0; ++i) thetas[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(n0);
  std::vector<Point2> pts = curve.batch(thetas, config.exec);
  std::size_t evals = thetas.size();

  double scale = 0.0;
  for (const Point2& p : pts) {
    if (!p.is_finite()) throw WindingError(WindingError::Kind::PoleTooClose, "curve oracle returned a non-finite point");
    scale = std::max(scale, distance(p, pole));
  }
  if (scale <= std::max(config.scale_floor_abs, 0.0))
    throw WindingError(WindingError::Kind::PoleTooClose,
                       "curve stays within the pole floor at every initial sample (scale " +
                           std::to_string(scale) + ")");
  const double floor = config.pole_floor_rel * scale;

  const double closure = distance(pts.front(), pts.back());
  if (closure > config.closure_tol_rel * scale) {
    std::ostringstream os;
    os << "curve is not closed: |c(0) - c(2pi)| = " << closure << " exceeds tolerance "
       << config.closure_tol_rel * scale;
    throw WindingError(WindingError::Kind::NotClosed, os.str());
  }

  std::vector<Node> nodes(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double d = distance(pts[i], pole);
    if (d <= floor) throw_pole_too_close(thetas[i], d, floor);
    nodes[i] = Node{thetas[i], pts[i], d};
  }

  // Refine every gap whose chord subtends >= pi/2 at the pole, one batched
  // round of midpoints at a time; the resulting partition depends only on the
  // predicate, not on evaluation order.
  while (true) {
    std::vector<std::size_t> split_after;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
      if (std::abs(turn_angle(nodes[i].point, nodes[i + 1].point, pole)) >= kMaxTurn) split_after.push_back(i);
    if (split_after.empty()) break;
    if (evals + split_after.size() > config.budget)
      throw WindingError(WindingError::Kind::BudgetExhausted,
                         "winding refinement budget exhausted (" + std::to_string(config.budget) + " evaluations)");

    std::vector<double> mids(split_after.size());
    for (std::size_t j = 0; j < split_after.size(); ++j)
      mids[j] = 0.5 * (nodes[split_after[j]].theta + nodes[split_after[j] + 1].theta);
    const std::vector<Point2> mid_pts = curve.batch(mids, config.exec);
    evals += mids.size();

    std::vector<Node> merged;
    merged.reserve(nodes.size() + mids.size());
    std::size_t j = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      merged.push_back(nodes[i]);
      if (j < split_after.size() && split_after[j] == i) {
        const double d = distance(mid_pts[j], pole);
        if (d <= floor) throw_pole_too_close(mids[j], d, floor);
        merged.push_back(Node{mids[j], mid_pts[j], d});
        ++j;
      }
    }
    nodes = std::move(merged);
  }

  return finish(nodes, pole, config, evals, scale);
}

WindingResult winding_number_strict(const std::vector<Point2>& points, Point2 pole,
                                    const WindingConfig& config) {
  if (points.size() < 3) throw InputError("strict winding: need at least 3 points");
  std::vector<Point2> pts = points;
  if (distance(pts.front(), pts.back()) > 0.0) pts.push_back(pts.front());  // close the polygon

  double scale = 0.0;
  for (const Point2& p : pts) scale = std::max(scale, distance(p, pole));
  if (scale <= 0.0)
    throw WindingError(WindingError::Kind::PoleTooClose, "point list coincides with the pole");
  const double floor = config.pole_floor_rel * scale;

  std::vector<Node> nodes(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = distance(pts[i], pole);
    if (d <= floor) throw_pole_too_close(static_cast<double>(i), d, floor);
    nodes[i] = Node{static_cast<double>(i), pts[i], d};
  }
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double t = turn_angle(nodes[i].point, nodes[i + 1].point, pole);
    if (std::abs(t) >= kMaxTurn) {
      std::ostringstream os;
      os << "point list needs refinement between entries " << i << " and " << i + 1
         << " (turn " << t << " rad >= pi/2) and no oracle is available";
      throw WindingError(WindingError::Kind::StrictModeRefinementNeeded, os.str());
    }
  }
  return finish(nodes, pole, config, pts.size(), scale);
}

RoucheResult rouche_equal_winding(const CurveOracle& a, const CurveOracle& b, Point2 pole,
                                  const WindingConfig& config) {
  const std::size_t n0 = std::max<std::size_t>(config.initial_samples, 16);
  std::vector<double> thetas(n0 + 1);
  for (std::size_t i = 0; i <= n0; ++i) thetas[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(n0);
  std::vector<Point2> pa = a.batch(thetas, config.exec);
  std::vector<Point2> pb = b.batch(thetas, config.exec);
  std::size_t evals = 2 * thetas.size();

  auto margin_at = [&](std::size_t i) { return distance(pb[i], pole) - distance(pa[i], pb[i]); };

  while (true) {
    double margin = margin_at(0);
    std::size_t worst = 0;
    for (std::size_t i = 1; i < thetas.size(); ++i) {
      const double m = margin_at(i);
      if (m < margin) {
        margin = m;
        worst = i;
      }
    }
    if (margin <= 0.0) {
      RoucheResult r;
      r.equal = false;
      r.margin = margin;
      r.witness_theta = thetas[worst];
      r.samples_used = evals;
      return r;
    }

    std::vector<std::size_t> split_after;
    for (std::size_t i = 0; i + 1 < thetas.size(); ++i) {
      const double va = distance(pa[i], pa[i + 1]);
      const double vb = distance(pb[i], pb[i + 1]);
      if (std::max(va, vb) > 0.1 * margin) split_after.push_back(i);
    }
    if (split_after.empty()) {
      WindingConfig wc = config;
      wc.keep_samples = false;
      const WindingResult wa = winding_number(a, pole, wc);
      const WindingResult wb = winding_number(b, pole, wc);
      if (wa.winding != wb.winding)
        throw Error("internal error: Rouche inequality held with margin " + std::to_string(margin) +
                    " but windings differ (" + std::to_string(wa.winding) + " vs " + std::to_string(wb.winding) + ")");
      RoucheResult r;
      r.equal = true;
      r.margin = margin;
      r.winding_a = wa.winding;
      r.winding_b = wb.winding;
      r.samples_used = evals + wa.samples_used + wb.samples_used;
      return r;
    }
    if (evals + 2 * split_after.size() > config.budget)
      throw WindingError(WindingError::Kind::BudgetExhausted, "Rouche comparison refinement budget exhausted");

    std::vector<double> mids(split_after.size());
    for (std::size_t j = 0; j < split_after.size(); ++j)
      mids[j] = 0.5 * (thetas[split_after[j]] + thetas[split_after[j] + 1]);
    const std::vector<Point2> ma = a.batch(mids, config.exec);
    const std::vector<Point2> mb = b.batch(mids, config.exec);
    evals += 2 * mids.size();

    std::vector<double> new_thetas;
    std::vector<Point2> new_pa, new_pb;
    new_thetas.reserve(thetas.size() + mids.size());
    new_pa.reserve(new_thetas.capacity());
    new_pb.reserve(new_thetas.capacity());
    std::size_t j = 0;
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      new_thetas.push_back(thetas[i]);
      new_pa.push_back(pa[i]);
      new_pb.push_back(pb[i]);
      if (j < split_after.size() && split_after[j] == i) {
        new_thetas.push_back(mids[j]);
        new_pa.push_back(ma[j]);
        new_pb.push_back(mb[j]);
        ++j;
      }
    }
    thetas = std::move(new_thetas);
    pa = std::move(new_pa);
    pb = std::move(new_pb);
  }
}

Point2 square_boundary_point(Point2 center, double half_width, double theta) {
  double s = theta / kTwoPi;
  s -= std::floor(s);
  const double q = 4.0 * s;
  const int edge = std::min(3, static_cast<int>(q));
  const double f = q - edge;
  const double h = half_width;
  switch (edge) {
    case 0: return {center.x + h, center.y - h + 2.0 * h * f};   // right edge, upward
    case 1: return {center.x + h - 2.0 * h * f, center.y + h};   // top edge, leftward
    case 2: return {center.x - h, center.y + h - 2.0 * h * f};   // left edge, downward
    default: return {center.x - h + 2.0 * h * f, center.y - h};  // bottom edge, rightward
  }
}

CurveOracle boundary_oracle(Point2 center, double half_width, const MapOracle& map) {
  if (!(half_width > 0.0)) throw InputError("boundary_oracle: half width must be positive");
  CurveOracle c;
  c.eval = [center, half_width, map](double theta) {
    return map.eval(square_boundary_point(center, half_width, theta));
  };
  c.eval_batch = [center, half_width, map](const std::vector<double>& thetas, ExecMode mode) {
    std::vector<Point2> pts(thetas.size());
    for (std::size_t i = 0; i < thetas.size(); ++i)
      pts[i] = square_boundary_point(center, half_width, thetas[i]);
    return map.batch(pts, mode);
  };
  return c;
}

}  // namespace pwind
