#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "micropush/planning/agp.hpp"
#include "micropush/planning/astar.hpp"
#include "micropush/planning/polyline.hpp"
#include "micropush/planning/raster.hpp"
#include "micropush/sim/params.hpp"
#include "micropush/sim/world.hpp"

namespace micropush::planning {

enum class PlannerKind { AGP, AStar };

std::string planner_name(PlannerKind k);  ///< "AGP" / "A*"
PlannerKind parse_planner(const std::string& s);

struct PlannerConfig {
  double agp_alpha = 3.0;
  double margin = 0.5;            ///< tangent offset (AGP) and mask growth (A*) [px]
  int agp_max_waypoints = 64;
  double astar_weight = 1.1;
  double spacing = 3.0;           ///< resampling step [px]
  bool fallback_to_astar = true;  ///< AGP failure retries with A*
};

struct PlanRequest {
  Vec2 start;
  Vec2 goal;
  double moving_radius = 5.0 / 1.2;  ///< [px]
  std::vector<int> excluded_ids;     ///< the mover, and the pushed cell when pushing
};

struct PlanResult {
  Polyline path;  ///< resampled
  Polyline raw;   ///< planner output before resampling
  std::vector<ObstacleCircle> obstacles;
  PlannerKind used = PlannerKind::AGP;
  bool fell_back = false;
  Vec2 start, goal;  ///< endpoints after nudging
  int mask_width = 0, mask_height = 0;
};

/// Rasterize, then extract and inflate the obstacles for a request.
std::vector<ObstacleCircle> obstacles_for(std::span<const sim::Body> bodies, double width,
                                          double height, const PlanRequest& req);

/// `p` if it is at least R_k + clearance from every circle; otherwise the
/// closest such point within 2 * r_move (ring search), else PlanningError.
Vec2 nudge_free(Vec2 p, std::span<const ObstacleCircle> obstacles, double r_move,
                double clearance, Vec2 lo, Vec2 hi);

/// A* over the grid inflated from `obstacles`, with start and goal snapped to
/// the nearest free pixel when their own pixel is blocked.
Polyline plan_astar_circles(Vec2 start, Vec2 goal, std::span<const ObstacleCircle> obstacles,
                            int width, int height, double r_move, const PlannerConfig& cfg);

/// Full pipeline: obstacles, nudging, planner (with optional A* fallback),
/// resampling.
PlanResult plan_path(std::span<const sim::Body> bodies, const sim::SimParams& params,
                     const PlanRequest& req, PlannerKind kind, const PlannerConfig& cfg = {});

/// Same, on already extracted obstacles.
PlanResult plan_with_obstacles(std::vector<ObstacleCircle> obstacles, int width, int height,
                               const PlanRequest& req, PlannerKind kind,
                               const PlannerConfig& cfg = {});

nlohmann::json polyline_to_json(const Polyline& p);
Polyline polyline_from_json(const nlohmann::json& j);
/// Mask dimensions, circles and the final polyline, for replay tooling.
nlohmann::json plan_debug_json(const PlanResult& r);

}  // namespace micropush::planning
