#pragma once

#include <span>
#include <vector>

#include "micropush/planning/polyline.hpp"
#include "micropush/planning/raster.hpp"

namespace micropush::planning {

struct AgpConfig {
  double alpha = 3.0;          ///< corridor pruning factor
  double margin = 0.5;         ///< tangent offset beyond R_k [px]
  int max_waypoints = 64;      ///< bound on detour advances
  double arc_step = 0.5235987755982988;  ///< largest angle spanned by one detour edge [rad]
  Vec2 bounds_lo{-1e300, -1e300};  ///< admissible box for new waypoints
  Vec2 bounds_hi{1e300, 1e300};
};

/// Indices of obstacles kept by the corridor test: distance to the start-goal
/// segment <= alpha * R_k, or within R_k of start or goal.
std::vector<std::size_t> prune_obstacles(Vec2 start, Vec2 goal,
                                         std::span<const ObstacleCircle> obstacles, double alpha);

/// True when every obstacle is at least R_k from segment a-b.
bool segment_clear(Vec2 a, Vec2 b, std::span<const ObstacleCircle> obstacles);

/// Smallest (distance to segment - R_k) over segments and obstacles; +inf
/// without obstacles.
double clearance(const Polyline& path, std::span<const ObstacleCircle> obstacles);

/// Analytic geometry planner. Prunes obstacles outside the start-goal
/// corridor, then repeatedly detours around the first blocking inflated
/// circle along a polygon circumscribing the circle grown by `margin`, whose
/// first edge lies on the tangent from the current point and whose last edge
/// lies on the tangent toward the goal. Falls back to the enclosing circle of
/// an overlapping cluster and then to detours around any kept circle. Throws
/// PlanningError when no clear advance exists or the waypoint bound is hit.
Polyline plan_agp(Vec2 start, Vec2 goal, std::span<const ObstacleCircle> obstacles,
                  const AgpConfig& cfg = {});

}  // namespace micropush::planning
