#include "micropush/planning/raster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "micropush/kernels/kernels.hpp"

namespace micropush::planning {

std::size_t OccupancyMask::count() const {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), std::uint8_t{1}));
}

void paint_disk(OccupancyMask& mask, Vec2 c, double r) {
  if (mask.width == 0 || mask.height == 0) return;
  const int y0 = std::max(0, static_cast<int>(std::floor(c.y - r - 0.5)));
  const int y1 = std::min(mask.height - 1, static_cast<int>(std::ceil(c.y + r + 0.5)));
  for (int y = y0; y <= y1; ++y) {
    std::uint8_t* row = &mask.cells[static_cast<std::size_t>(y) * mask.width];
    kernels::mark_disk_row(c.x, c.y, r, y + 0.5, {row, static_cast<std::size_t>(mask.width)});
  }
}

OccupancyMask rasterize(std::span<const sim::Body> bodies, double width, double height,
                        std::span<const int> excluded_ids) {
  OccupancyMask mask(static_cast<int>(std::ceil(width)), static_cast<int>(std::ceil(height)));
  for (const sim::Body& b : bodies) {
    if (std::find(excluded_ids.begin(), excluded_ids.end(), b.id) != excluded_ids.end()) continue;
    paint_disk(mask, b.position, b.radius);
  }
  return mask;
}

namespace {

Circle from2(Vec2 a, Vec2 b) { return {(a + b) * 0.5, distance(a, b) * 0.5}; }

Circle from3(Vec2 a, Vec2 b, Vec2 c) {
  const Vec2 ab = b - a, ac = c - a;
  const double d = 2.0 * ab.cross(ac);
  if (std::abs(d) < 1e-12) {
    // Collinear: the widest pair spans the circle.
    Circle best = from2(a, b);
    for (const Circle& k : {from2(a, c), from2(b, c)}) {
      if (k.radius > best.radius) best = k;
    }
    return best;
  }
  const double b2 = ab.norm2(), c2 = ac.norm2();
  const Vec2 u{(ac.y * b2 - ab.y * c2) / d, (ab.x * c2 - ac.x * b2) / d};
  return {a + u, u.norm()};
}

bool contains(const Circle& c, Vec2 p) { return distance(c.center, p) <= c.radius * (1 + 1e-12) + 1e-12; }

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(),
            [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> h(2 * pts.size());
  std::size_t k = 0;
  auto turn = [](Vec2 o, Vec2 a, Vec2 b) { return (a - o).cross(b - o); };
  for (const Vec2& p : pts) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace

Circle min_enclosing_circle(std::span<const Vec2> points) {
  if (points.empty()) return {};
  Circle c{points[0], 0.0};
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (contains(c, points[i])) continue;
    c = {points[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (contains(c, points[j])) continue;
      c = from2(points[i], points[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (!contains(c, points[k])) c = from3(points[i], points[j], points[k]);
      }
    }
  }
  return c;
}

std::vector<ObstacleCircle> extract_obstacles(const OccupancyMask& mask, double r_move) {
  std::vector<ObstacleCircle> out;
  const int w = mask.width, h = mask.height;
  std::vector<int> label(mask.cells.size(), -1);
  std::vector<std::pair<int, int>> stack, members;
  int next_label = 0;
  for (int y0 = 0; y0 < h; ++y0) {
    for (int x0 = 0; x0 < w; ++x0) {
      if (!mask.at(x0, y0) || label[static_cast<std::size_t>(y0) * w + x0] >= 0) continue;
      members.clear();
      stack.assign(1, {x0, y0});
      label[static_cast<std::size_t>(y0) * w + x0] = next_label;
      while (!stack.empty()) {
        const auto [x, y] = stack.back();
        stack.pop_back();
        members.push_back({x, y});
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = x + dx, ny = y + dy;
            if ((dx == 0 && dy == 0) || !mask.in_bounds(nx, ny) || !mask.at(nx, ny)) continue;
            int& l = label[static_cast<std::size_t>(ny) * w + nx];
            if (l >= 0) continue;
            l = next_label;
            stack.push_back({nx, ny});
          }
        }
      }
      // Contour: pixels with a 4-neighbor outside the component.
      std::vector<Vec2> corners;
      for (const auto& [x, y] : members) {
        bool boundary = false;
        for (const auto& [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
          const int nx = x + dx, ny = y + dy;
          if (!mask.in_bounds(nx, ny) || label[static_cast<std::size_t>(ny) * w + nx] != next_label) {
            boundary = true;
            break;
          }
        }
        if (!boundary) continue;
        corners.push_back({double(x), double(y)});
        corners.push_back({double(x + 1), double(y)});
        corners.push_back({double(x), double(y + 1)});
        corners.push_back({double(x + 1), double(y + 1)});
      }
      const std::vector<Vec2> hull = convex_hull(std::move(corners));
      const Circle c = min_enclosing_circle(hull);
      out.push_back({c.center, c.radius, c.radius + r_move});
      ++next_label;
    }
  }
  return out;
}

OccupancyMask inflate(std::span<const ObstacleCircle> obstacles, int width, int height,
                      double margin, double border) {
  OccupancyMask m(width, height);
  for (const ObstacleCircle& o : obstacles) paint_disk(m, o.center, o.inflated + margin);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double cx = x + 0.5, cy = y + 0.5;
      if (cx < border || cy < border || cx > width - border || cy > height - border) m.at(x, y) = 1;
    }
  }
  return m;
}

}  // namespace micropush::planning
