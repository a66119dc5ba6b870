#include "micropush/planning/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "micropush/core/error.hpp"

namespace micropush::planning {

std::string planner_name(PlannerKind k) { return k == PlannerKind::AGP ? "AGP" : "A*"; }

PlannerKind parse_planner(const std::string& s) {
  if (s == "AGP" || s == "agp") return PlannerKind::AGP;
  if (s == "A*" || s == "astar" || s == "AStar") return PlannerKind::AStar;
  throw ConfigError("unknown planner '" + s + "'");
}

std::vector<ObstacleCircle> obstacles_for(std::span<const sim::Body> bodies, double width,
                                          double height, const PlanRequest& req) {
  const OccupancyMask mask = rasterize(bodies, width, height, req.excluded_ids);
  return extract_obstacles(mask, req.moving_radius);
}

namespace {

bool clear_of(Vec2 p, std::span<const ObstacleCircle> obstacles, double extra) {
  for (const ObstacleCircle& o : obstacles) {
    if (distance(p, o.center) < o.inflated + extra) return false;
  }
  return true;
}

bool inside(Vec2 p, Vec2 lo, Vec2 hi) {
  return p.x >= lo.x && p.y >= lo.y && p.x <= hi.x && p.y <= hi.y;
}

GridCell nearest_free_cell(Vec2 p, const OccupancyMask& m, double max_dist) {
  const GridCell c = cell_of(p, m);
  if (!m.at(c.x, c.y)) return c;
  const int reach = static_cast<int>(std::ceil(max_dist)) + 1;
  double best = std::numeric_limits<double>::infinity();
  GridCell out = c;
  for (int y = c.y - reach; y <= c.y + reach; ++y) {
    for (int x = c.x - reach; x <= c.x + reach; ++x) {
      if (!m.in_bounds(x, y) || m.at(x, y)) continue;
      const double d = distance(p, cell_center({x, y}));
      if (d < best) {
        best = d;
        out = {x, y};
      }
    }
  }
  if (best > max_dist + 1.0) throw PlanningError("no free grid cell near the endpoint");
  return out;
}

}  // namespace

Vec2 nudge_free(Vec2 p, std::span<const ObstacleCircle> obstacles, double r_move,
                double clearance, Vec2 lo, Vec2 hi) {
  if (clear_of(p, obstacles, clearance)) return p;
  constexpr int kAngles = 72;
  const double dr = 0.25;
  for (double r = dr; r <= 2.0 * r_move + 1e-9; r += dr) {
    for (int k = 0; k < kAngles; ++k) {
      const Vec2 q = p + Vec2::from_angle(2.0 * std::numbers::pi * k / kAngles) * r;
      if (inside(q, lo, hi) && clear_of(q, obstacles, clearance)) return q;
    }
  }
  throw PlanningError("endpoint lies inside inflated space with no free point nearby");
}

Polyline plan_astar_circles(Vec2 start, Vec2 goal, std::span<const ObstacleCircle> obstacles,
                            int width, int height, double r_move, const PlannerConfig& cfg) {
  const OccupancyMask grid = inflate(obstacles, width, height, cfg.margin, r_move);
  const GridCell s = nearest_free_cell(start, grid, 2.0 * r_move);
  const GridCell g = nearest_free_cell(goal, grid, 2.0 * r_move);
  const GridPath gp = astar_grid(grid, s, g, cfg.astar_weight);
  std::vector<Vec2> pts;
  pts.reserve(gp.cells.size() + 2);
  for (const GridCell& c : gp.cells) pts.push_back(cell_center(c));
  // Keep the true endpoints when the short link to the grid is clear.
  if (segment_clear(start, pts.front(), obstacles)) pts.insert(pts.begin(), start);
  if (segment_clear(pts.back(), goal, obstacles)) pts.push_back(goal);
  if (pts.size() == 1) pts.push_back(pts.front());
  return simplify_collinear(Polyline{std::move(pts)});
}

PlanResult plan_with_obstacles(std::vector<ObstacleCircle> obstacles, int width, int height,
                               const PlanRequest& req, PlannerKind kind,
                               const PlannerConfig& cfg) {
  if (!(req.moving_radius > 0.0)) throw PlanningError("moving radius must be positive");
  PlanResult r;
  r.obstacles = std::move(obstacles);
  r.mask_width = width;
  r.mask_height = height;
  const double rm = req.moving_radius;
  const Vec2 lo{std::min(rm, 0.5 * width), std::min(rm, 0.5 * height)};
  const Vec2 hi{std::max(width - rm, 0.5 * width), std::max(height - rm, 0.5 * height)};
  const double nudge_clear = 1e-6;
  r.start = nudge_free(req.start, r.obstacles, rm, nudge_clear, {-1e300, -1e300}, {1e300, 1e300});
  r.goal = nudge_free(req.goal, r.obstacles, rm, nudge_clear, lo, hi);
  r.used = kind;
  auto run_astar = [&] {
    return plan_astar_circles(r.start, r.goal, r.obstacles, width, height, rm, cfg);
  };
  if (distance(r.start, r.goal) < 1e-9) {
    r.raw = Polyline{{r.start, r.goal}};
  } else if (kind == PlannerKind::AGP) {
    AgpConfig ac;
    ac.alpha = cfg.agp_alpha;
    ac.margin = cfg.margin;
    ac.max_waypoints = cfg.agp_max_waypoints;
    ac.bounds_lo = lo;
    ac.bounds_hi = hi;
    try {
      r.raw = plan_agp(r.start, r.goal, r.obstacles, ac);
    } catch (const PlanningError&) {
      if (!cfg.fallback_to_astar) throw;
      r.raw = run_astar();
      r.used = PlannerKind::AStar;
      r.fell_back = true;
    }
  } else {
    r.raw = run_astar();
  }
  r.path = resample(r.raw, cfg.spacing);
  return r;
}

PlanResult plan_path(std::span<const sim::Body> bodies, const sim::SimParams& params,
                     const PlanRequest& req, PlannerKind kind, const PlannerConfig& cfg) {
  auto obstacles = obstacles_for(bodies, params.width, params.height, req);
  return plan_with_obstacles(std::move(obstacles), static_cast<int>(std::ceil(params.width)),
                             static_cast<int>(std::ceil(params.height)), req, kind, cfg);
}

nlohmann::json polyline_to_json(const Polyline& p) {
  nlohmann::json a = nlohmann::json::array();
  for (const Vec2& v : p.vertices) a.push_back({v.x, v.y});
  return a;
}

Polyline polyline_from_json(const nlohmann::json& j) {
  Polyline p;
  for (const auto& v : j) p.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
  return p;
}

nlohmann::json plan_debug_json(const PlanResult& r) {
  nlohmann::json circles = nlohmann::json::array();
  for (const ObstacleCircle& o : r.obstacles) {
    circles.push_back({{"center", {o.center.x, o.center.y}},
                       {"radius", o.radius},
                       {"inflated", o.inflated}});
  }
  return {{"mask", {{"width", r.mask_width}, {"height", r.mask_height}}},
          {"planner", planner_name(r.used)},
          {"fell_back", r.fell_back},
          {"circles", std::move(circles)},
          {"raw", polyline_to_json(r.raw)},
          {"path", polyline_to_json(r.path)}};
}

}  // namespace micropush::planning
