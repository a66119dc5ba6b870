#include "micropush/planning/polyline.hpp"

#include <algorithm>
#include <cmath>

#include "micropush/core/error.hpp"
#include "micropush/kernels/kernels.hpp"

namespace micropush::planning {

double path_length(const Polyline& p) {
  double len = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) len += distance(p[i - 1], p[i]);
  return len;
}

double turning_angle(const Polyline& p) {
  double total = 0.0;
  bool have_prev = false;
  double prev_heading = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    const Vec2 d = p[i] - p[i - 1];
    if (d.norm2() == 0.0) continue;
    const double h = d.angle();
    if (have_prev) total += std::abs(wrap_angle(h - prev_heading));
    prev_heading = h;
    have_prev = true;
  }
  return total;
}

Polyline resample(const Polyline& p, double spacing) {
  if (!(spacing > 0.0)) throw Error("resample spacing must be positive");
  Polyline out;
  if (p.empty()) return out;
  constexpr double merge = 1e-9;
  auto push = [&out](Vec2 v) {
    if (out.empty() || distance(out.back(), v) > merge) out.vertices.push_back(v);
  };
  push(p.front());
  double s0 = 0.0;  // arc length at the start of the current segment
  long next = 1;     // index of the next spacing multiple
  for (std::size_t i = 1; i < p.size(); ++i) {
    const Vec2 a = p[i - 1], b = p[i];
    const double len = distance(a, b);
    const double s1 = s0 + len;
    while (static_cast<double>(next) * spacing < s1 - merge) {
      const double u = (static_cast<double>(next) * spacing - s0) / len;
      push(lerp(a, b, u));
      ++next;
    }
    if (static_cast<double>(next) * spacing <= s1 + merge) ++next;
    push(b);
    s0 = s1;
  }
  if (out.size() == 1 && p.size() > 1) out.vertices.push_back(p.back());
  return out;
}

Polyline simplify_collinear(const Polyline& p, double tol) {
  Polyline out;
  for (const Vec2& v : p.vertices) {
    if (!out.empty() && distance(out.back(), v) <= tol) continue;
    while (out.size() >= 2) {
      const Vec2 a = out.vertices[out.size() - 2], b = out.back();
      const Vec2 ab = b - a, bv = v - b;
      if (std::abs(ab.cross(bv)) <= tol * ab.norm() * bv.norm() && ab.dot(bv) > 0.0) {
        out.vertices.pop_back();
      } else {
        break;
      }
    }
    out.vertices.push_back(v);
  }
  if (out.size() == 1 && p.size() > 1) out.vertices.push_back(p.back());
  return out;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  double d2 = 0.0;
  kernels::table(kernels::Isa::Scalar).points_segment_dist2(a.x, a.y, b.x, b.y, &p.x, &p.y, &d2, 1);
  return std::sqrt(d2);
}

double point_polyline_distance(Vec2 p, const Polyline& line) {
  if (line.empty()) throw Error("empty polyline");
  if (line.size() == 1) return distance(p, line.front());
  const std::size_t m = line.size() - 1;
  std::vector<double> ax(m), ay(m), bx(m), by(m);
  for (std::size_t k = 0; k < m; ++k) {
    ax[k] = line[k].x;
    ay[k] = line[k].y;
    bx[k] = line[k + 1].x;
    by[k] = line[k + 1].y;
  }
  return std::sqrt(kernels::point_segments_min_dist2(p.x, p.y, {ax, ay, bx, by}));
}

Vec2 point_at(const Polyline& p, double s) {
  if (p.empty()) throw Error("empty polyline");
  if (s <= 0.0) return p.front();
  for (std::size_t i = 1; i < p.size(); ++i) {
    const double len = distance(p[i - 1], p[i]);
    if (s <= len && len > 0.0) return lerp(p[i - 1], p[i], s / len);
    s -= len;
  }
  return p.back();
}

double project_arclength(const Polyline& line, Vec2 p) {
  double best = INFINITY, best_s = 0.0, s0 = 0.0;
  for (std::size_t i = 1; i < line.size(); ++i) {
    const Vec2 a = line[i - 1], e = line[i] - a;
    const double len2 = e.norm2();
    const double t = len2 > 0.0 ? std::clamp((p - a).dot(e) / len2, 0.0, 1.0) : 0.0;
    const double d = distance(p, a + e * t);
    const double len = std::sqrt(len2);
    if (d < best) {
      best = d;
      best_s = s0 + t * len;
    }
    s0 += len;
  }
  return best_s;
}

}  // namespace micropush::planning
