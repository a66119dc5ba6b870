#include "micropush/planning/astar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "micropush/core/error.hpp"

namespace micropush::planning {

double GridCost::value() const {
  return static_cast<double>(cardinal) + static_cast<double>(diagonal) * std::numbers::sqrt2;
}

namespace {

constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kDy[8] = {0, -1, -1, -1, 0, 1, 1, 1};

struct Entry {
  double f, h;
  long order;
  int index;
};

struct Worse {
  bool operator()(const Entry& a, const Entry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    return a.order > b.order;
  }
};

}  // namespace

GridPath astar_grid(const OccupancyMask& blocked, GridCell start, GridCell goal, double weight) {
  const int w = blocked.width, h = blocked.height;
  if (!blocked.in_bounds(start.x, start.y) || !blocked.in_bounds(goal.x, goal.y)) {
    throw PlanningError("start or goal outside the grid");
  }
  if (blocked.at(start.x, start.y) || blocked.at(goal.x, goal.y)) {
    throw PlanningError("start or goal cell is blocked");
  }
  const std::size_t n = static_cast<std::size_t>(w) * h;
  std::vector<GridCost> g(n, GridCost{-1, 0});
  std::vector<int> parent(n, -1);
  std::vector<std::uint8_t> closed(n, 0);
  auto idx = [w](int x, int y) { return y * w + x; };
  auto heur = [&](int x, int y) { return std::hypot(double(x - goal.x), double(y - goal.y)); };

  std::priority_queue<Entry, std::vector<Entry>, Worse> open;
  long order = 0;
  const int s = idx(start.x, start.y), t = idx(goal.x, goal.y);
  g[s] = {0, 0};
  open.push({weight * heur(start.x, start.y), heur(start.x, start.y), order++, s});
  GridPath path;
  while (!open.empty()) {
    const Entry e = open.top();
    open.pop();
    if (closed[e.index]) continue;
    closed[e.index] = 1;
    ++path.expanded;
    if (e.index == t) break;
    const int x = e.index % w, y = e.index / w;
    for (int k = 0; k < 8; ++k) {
      const int nx = x + kDx[k], ny = y + kDy[k];
      if (!blocked.in_bounds(nx, ny) || blocked.at(nx, ny)) continue;
      const bool diag = kDx[k] != 0 && kDy[k] != 0;
      if (diag && (blocked.at(x + kDx[k], y) || blocked.at(x, y + kDy[k]))) continue;
      const int ni = idx(nx, ny);
      if (closed[ni]) continue;
      GridCost c = g[e.index];
      (diag ? c.diagonal : c.cardinal) += 1;
      if (g[ni].cardinal >= 0 && g[ni].value() <= c.value()) continue;
      g[ni] = c;
      parent[ni] = e.index;
      const double hv = heur(nx, ny);
      open.push({c.value() + weight * hv, hv, order++, ni});
    }
  }
  if (!closed[t]) throw PlanningError("goal unreachable on the occupancy grid");
  for (int i = t; i >= 0; i = parent[i]) path.cells.push_back({i % w, i / w});
  std::reverse(path.cells.begin(), path.cells.end());
  path.cost = g[t];
  return path;
}

GridCell cell_of(Vec2 p, const OccupancyMask& mask) {
  const int x = std::clamp(static_cast<int>(std::floor(p.x)), 0, mask.width - 1);
  const int y = std::clamp(static_cast<int>(std::floor(p.y)), 0, mask.height - 1);
  return {x, y};
}

Polyline plan_astar(Vec2 start, Vec2 goal, const OccupancyMask& inflated, double weight) {
  const GridPath gp = astar_grid(inflated, cell_of(start, inflated), cell_of(goal, inflated), weight);
  Polyline line;
  line.vertices.push_back(start);
  for (const GridCell& c : gp.cells) line.vertices.push_back(cell_center(c));
  line.vertices.push_back(goal);
  return simplify_collinear(line);
}

}  // namespace micropush::planning
