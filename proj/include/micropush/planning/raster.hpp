#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "micropush/core/vec2.hpp"
#include "micropush/sim/world.hpp"

namespace micropush::planning {

/// Binary occupancy grid, one cell per world pixel. Pixel (x, y) covers
/// [x, x+1) x [y, y+1) and is sampled at its center.
struct OccupancyMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> cells;  ///< row-major, 1 = occupied

  OccupancyMask() = default;
  OccupancyMask(int w, int h) : width(w), height(h), cells(static_cast<std::size_t>(w) * h, 0) {}

  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
  std::uint8_t at(int x, int y) const { return cells[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return cells[static_cast<std::size_t>(y) * width + x]; }
  std::size_t count() const;
};

/// Paints a filled disk: every pixel whose center lies within r of c.
void paint_disk(OccupancyMask& mask, Vec2 c, double r);

/// Rasterizes all bodies except the excluded ids.
OccupancyMask rasterize(std::span<const sim::Body> bodies, double width, double height,
                        std::span<const int> excluded_ids);

struct ObstacleCircle {
  Vec2 center;            ///< [px]
  double radius = 0.0;    ///< r_obs [px]
  double inflated = 0.0;  ///< R = r_obs + r_move [px]
};

struct Circle {
  Vec2 center;
  double radius = 0.0;
};

/// Smallest circle containing all points (incremental Welzl-type construction,
/// deterministic in the input order).
Circle min_enclosing_circle(std::span<const Vec2> points);

/// Connected components (8-connectivity) of occupied pixels, each summarized by
/// the minimum enclosing circle of its pixel-boundary corners and inflated by
/// r_move. Components are ordered by their first pixel in row-major order.
std::vector<ObstacleCircle> extract_obstacles(const OccupancyMask& mask, double r_move);

/// Grid of pixels whose centers lie within (R_k + margin) of a circle, or
/// closer than `border` to the workspace edge.
OccupancyMask inflate(std::span<const ObstacleCircle> obstacles, int width, int height,
                      double margin, double border);

}  // namespace micropush::planning
