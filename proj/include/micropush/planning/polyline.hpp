#pragma once

#include <span>
#include <vector>

#include "micropush/core/vec2.hpp"

namespace micropush::planning {

/// Ordered vertex list in pixel space.
struct Polyline {
  std::vector<Vec2> vertices;

  std::size_t size() const { return vertices.size(); }
  bool empty() const { return vertices.empty(); }
  const Vec2& front() const { return vertices.front(); }
  const Vec2& back() const { return vertices.back(); }
  const Vec2& operator[](std::size_t i) const { return vertices[i]; }
};

double path_length(const Polyline& p);

/// Sum over interior vertices of the absolute heading change [rad].
/// Zero-length segments are skipped.
double turning_angle(const Polyline& p);

/// Vertices at every arc-length multiple of `spacing`, plus the endpoints and
/// the original interior vertices (so the geometry, and with it the length and
/// the clearance, is unchanged). Points closer than 1e-9 px are merged.
Polyline resample(const Polyline& p, double spacing);

/// Removes consecutive duplicates and vertices in the middle of straight runs.
Polyline simplify_collinear(const Polyline& p, double tol = 1e-9);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// Exact distance from `p` to the nearest point of the polyline.
double point_polyline_distance(Vec2 p, const Polyline& line);

/// Point at arc length `s` (clamped to [0, length]).
Vec2 point_at(const Polyline& p, double s);

/// Arc length of the projection of `p` onto the polyline.
double project_arclength(const Polyline& line, Vec2 p);

}  // namespace micropush::planning
