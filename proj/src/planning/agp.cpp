#include "micropush/planning/agp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "micropush/core/error.hpp"

namespace micropush::planning {

std::vector<std::size_t> prune_obstacles(Vec2 start, Vec2 goal,
                                         std::span<const ObstacleCircle> obstacles, double alpha) {
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < obstacles.size(); ++k) {
    const ObstacleCircle& o = obstacles[k];
    const bool corridor = point_segment_distance(o.center, start, goal) <= alpha * o.inflated;
    const bool at_ends =
        distance(o.center, start) <= o.inflated || distance(o.center, goal) <= o.inflated;
    if (corridor || at_ends) keep.push_back(k);
  }
  return keep;
}

bool segment_clear(Vec2 a, Vec2 b, std::span<const ObstacleCircle> obstacles) {
  for (const ObstacleCircle& o : obstacles) {
    if (point_segment_distance(o.center, a, b) < o.inflated) return false;
  }
  return true;
}

double clearance(const Polyline& path, std::span<const ObstacleCircle> obstacles) {
  double best = std::numeric_limits<double>::infinity();
  for (const ObstacleCircle& o : obstacles) {
    if (path.size() == 1) best = std::min(best, distance(o.center, path.front()) - o.inflated);
    for (std::size_t i = 1; i < path.size(); ++i) {
      best = std::min(best, point_segment_distance(o.center, path[i - 1], path[i]) - o.inflated);
    }
  }
  return best;
}

namespace {

struct Candidate {
  std::vector<Vec2> chain;
  double score = std::numeric_limits<double>::infinity();
  double turn = 0.0;
};

bool point_free(Vec2 p, std::span<const ObstacleCircle> obstacles) {
  for (const ObstacleCircle& o : obstacles) {
    if (distance(p, o.center) < o.inflated) return false;
  }
  return true;
}

class Planner {
 public:
  Planner(Vec2 start, Vec2 goal, std::span<const ObstacleCircle> obstacles, const AgpConfig& cfg)
      : goal_(goal), all_(obstacles), cfg_(cfg) {
    path_.push_back(start);
    for (std::size_t k : prune_obstacles(start, goal, obstacles, cfg.alpha)) active_.push_back(k);
  }

  Polyline run() {
    if (!point_free(path_.front(), all_) || !point_free(goal_, all_)) {
      throw PlanningError("start or goal inside an inflated obstacle");
    }
    for (int advance = 0;; ++advance) {
      const Vec2 p = path_.back();
      const std::optional<std::size_t> block = first_blocking(p, goal_);
      if (!block) break;
      if (advance >= cfg_.max_waypoints) throw PlanningError("waypoint bound reached");
      Candidate best = best_around(p, {all_[*block].center, all_[*block].inflated + cfg_.margin});
      if (best.chain.empty()) {
        const std::vector<std::size_t> cl = cluster(*block);
        if (cl.size() > 1) best = best_around(p, enclosing(cl));
      }
      if (best.chain.empty()) {
        for (std::size_t k : active_) {
          if (k == *block) continue;
          Candidate c = best_around(p, {all_[k].center, all_[k].inflated + cfg_.margin});
          if (better(c, best)) best = std::move(c);
        }
      }
      if (best.chain.empty()) throw PlanningError("no collision-free advance");
      path_.insert(path_.end(), best.chain.begin(), best.chain.end());
    }
    path_.push_back(goal_);
    return simplify_collinear(Polyline{path_});
  }

 private:
  Vec2 goal_;
  std::span<const ObstacleCircle> all_;
  AgpConfig cfg_;
  std::vector<std::size_t> active_;
  std::vector<Vec2> path_;

  // First blocking circle along a-b, by the position of its closest approach.
  // Circles pruned earlier are promoted into the active set when they block.
  std::optional<std::size_t> first_blocking(Vec2 a, Vec2 b) {
    std::optional<std::size_t> best;
    double best_t = std::numeric_limits<double>::infinity();
    const Vec2 e = b - a;
    const double len2 = e.norm2();
    for (std::size_t k = 0; k < all_.size(); ++k) {
      const ObstacleCircle& o = all_[k];
      if (point_segment_distance(o.center, a, b) >= o.inflated) continue;
      if (std::find(active_.begin(), active_.end(), k) == active_.end()) active_.push_back(k);
      const double t = len2 > 0.0 ? (o.center - a).dot(e) / len2 : 0.0;
      if (t < best_t) {
        best_t = t;
        best = k;
      }
    }
    return best;
  }

  std::vector<std::size_t> cluster(std::size_t seed) const {
    std::vector<std::size_t> members{seed};
    for (std::size_t i = 0; i < members.size(); ++i) {
      const ObstacleCircle& a = all_[members[i]];
      for (std::size_t k = 0; k < all_.size(); ++k) {
        if (std::find(members.begin(), members.end(), k) != members.end()) continue;
        const ObstacleCircle& b = all_[k];
        if (distance(a.center, b.center) < a.inflated + b.inflated + 2.0 * cfg_.margin) {
          members.push_back(k);
        }
      }
    }
    return members;
  }

  Circle enclosing(const std::vector<std::size_t>& members) const {
    std::vector<Vec2> centers;
    for (std::size_t k : members) centers.push_back(all_[k].center);
    Circle c = min_enclosing_circle(centers);
    double r = 0.0;
    for (std::size_t k : members) r = std::max(r, distance(c.center, all_[k].center) + all_[k].inflated);
    c.radius = r + cfg_.margin;
    return c;
  }

  bool in_bounds(Vec2 v) const {
    return v.x >= cfg_.bounds_lo.x && v.y >= cfg_.bounds_lo.y && v.x <= cfg_.bounds_hi.x &&
           v.y <= cfg_.bounds_hi.y;
  }

  bool visited(Vec2 v) const {
    for (const Vec2& q : path_) {
      if (distance(q, v) < 0.5) return true;
    }
    return false;
  }

  static bool better(const Candidate& a, const Candidate& b) {
    if (a.chain.empty()) return false;
    if (b.chain.empty()) return true;
    if (a.score != b.score) return a.score < b.score;
    return a.turn < b.turn;
  }

  Candidate best_around(Vec2 p, Circle circ) const {
    Candidate best;
    for (int side : {+1, -1}) {
      Candidate c = detour(p, circ, side);
      if (better(c, best)) best = std::move(c);
    }
    return best;
  }

  // Polygon circumscribing `circ` from p's tangent to the goal's tangent, on
  // one side, truncated at the first vertex that is not admissible.
  Candidate detour(Vec2 p, Circle circ, int side) const {
    Candidate cand;
    const Vec2 c = circ.center;
    const double dp = distance(p, c), dq = distance(goal_, c);
    const double rho = std::min({circ.radius, dp, dq});
    if (!(rho > 0.0)) return cand;
    const double s = side;
    const double phi_p = (p - c).angle() + s * std::acos(std::min(1.0, rho / dp));
    const double phi_q = (goal_ - c).angle() - s * std::acos(std::min(1.0, rho / dq));
    double sweep = std::fmod(s * (phi_q - phi_p), 2.0 * std::numbers::pi);
    if (sweep < 0.0) sweep += 2.0 * std::numbers::pi;
    const int m = std::max(1, static_cast<int>(std::ceil(sweep / cfg_.arc_step - 1e-12)));
    const double step = sweep / m;
    const double reach = rho / std::cos(0.5 * step);

    Vec2 prev = p;
    double length = 0.0;
    for (int k = 0; k < m; ++k) {
      const Vec2 v = c + Vec2::from_angle(phi_p + s * (k + 0.5) * step) * reach;
      if (!in_bounds(v) || visited(v) || !point_free(v, all_) || !segment_clear(prev, v, all_)) {
        break;
      }
      length += distance(prev, v);
      cand.chain.push_back(v);
      prev = v;
    }
    if (cand.chain.empty() || distance(cand.chain.front(), p) < 1e-9) {
      cand.chain.clear();
      return cand;
    }
    cand.score = length + distance(prev, goal_);
    if (path_.size() >= 2) {
      const Vec2 in = p - path_[path_.size() - 2];
      cand.turn = angle_between(in, cand.chain.front() - p);
    }
    return cand;
  }
};

}  // namespace

Polyline plan_agp(Vec2 start, Vec2 goal, std::span<const ObstacleCircle> obstacles,
                  const AgpConfig& cfg) {
  return Planner(start, goal, obstacles, cfg).run();
}

}  // namespace micropush::planning
