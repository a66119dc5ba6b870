#pragma once

#include <vector>

#include "micropush/planning/polyline.hpp"
#include "micropush/planning/raster.hpp"

namespace micropush::planning {

struct GridCell {
  int x = 0, y = 0;
  bool operator==(const GridCell&) const = default;
};

/// Path cost as step counts, so equal costs compare exactly.
struct GridCost {
  long cardinal = 0;
  long diagonal = 0;
  double value() const;
};

struct GridPath {
  std::vector<GridCell> cells;
  GridCost cost;
  long expanded = 0;
};

/// Weighted A* on the 8-connected grid (cardinal cost 1, diagonal sqrt(2),
/// no corner cutting), f = g + w * h with the Euclidean heuristic. Equal f
/// prefers the smaller h, then the earlier insertion. Neighbor order: E, NE,
/// N, NW, W, SW, S, SE, with N = -y. Throws PlanningError when unreachable.
GridPath astar_grid(const OccupancyMask& blocked, GridCell start, GridCell goal, double weight);

/// Pixel containing p (clamped to the grid).
GridCell cell_of(Vec2 p, const OccupancyMask& mask);
inline Vec2 cell_center(GridCell c) { return {c.x + 0.5, c.y + 0.5}; }

/// Grid path as a polyline from `start` to `goal` through the pixel centers,
/// with collinear runs compressed.
Polyline plan_astar(Vec2 start, Vec2 goal, const OccupancyMask& inflated, double weight);

}  // namespace micropush::planning
