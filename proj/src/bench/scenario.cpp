#include "micropush/bench/scenario.hpp"

#include <limits>

#include "micropush/core/error.hpp"
#include "micropush/core/rng.hpp"

namespace micropush::bench {

double exclusion_radius(const EpisodeConfig& cfg) {
  return 2.0 * sim::SceneConfig{}.cell_radius + cfg.bench.exclusion_margin;
}

std::uint64_t layout_seed(std::uint64_t seed, int k) {
  if (k == 0) return seed;
  return splitmix64(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(k)));
}

namespace {

bool clear_of(Vec2 c, const std::vector<Vec2>& targets, double r) {
  for (const Vec2& t : targets) {
    if (distance(c, t) < r) return false;
  }
  return true;
}

int nearest_cell(const sim::World& w, Vec2 p) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (const sim::Body& b : w.bodies()) {
    if (b.kind != sim::BodyKind::Cell) continue;
    const double d = distance(b.position, p);
    if (d < best_d) {
      best_d = d;
      best = b.id;
    }
  }
  return best;
}

// The robot has to fit behind the cell on the side facing away from the goal.
bool pushable(const sim::World& w, int cell_id, Vec2 goal, double r_robot, double clearance) {
  const sim::Body* c = w.find(cell_id);
  const Vec2 d = goal - c->position;
  if (!(d.norm() > 0.0)) return false;
  const Vec2 pre = c->position - d / d.norm() * (r_robot + c->radius + clearance);
  const auto& p = w.params();
  return pre.x >= r_robot && pre.x <= p.width - r_robot && pre.y >= r_robot &&
         pre.y <= p.height - r_robot;
}

}  // namespace

Scenario generate_scenario(const EpisodeConfig& cfg) {
  cfg.validate();
  sim::SimParams sp = cfg.sim;
  sp.flow_enabled = cfg.flow_on;

  sim::SceneConfig scene;
  scene.robot_box_lo = {0.0, 0.0};
  scene.robot_box_hi = {cfg.bench.robot_box_frac * sp.width, cfg.bench.robot_box_frac * sp.height};
  const double excl = exclusion_radius(cfg);

  task::HexSpec hex;
  hex.center = {0.5 * sp.width, 0.5 * sp.height};
  hex.radius = cfg.hex_radius_factor * scene.cell_radius;
  const std::vector<Vec2> vertices = task::hex_vertices(hex);
  const Vec2 goal{cfg.bench.goal_frac * sp.width, cfg.bench.goal_frac * sp.height};

  std::vector<Vec2> keep_clear;
  if (cfg.task == Task::Transport) {
    keep_clear = {goal};
    if (cfg.flow_on) {
      scene.n_cells = cfg.bench.n_cells_flow;
      // A lone cell is drawn from the central region so that it can be pushed
      // from any side.
      scene.sample_cell = [&sp](RngStream& rng) {
        return Vec2{rng.uniform(0.25 * sp.width, 0.75 * sp.width),
                    rng.uniform(0.25 * sp.height, 0.75 * sp.height)};
      };
    } else {
      scene.n_cells = cfg.bench.n_cells;
    }
  } else {
    scene.n_cells = cfg.bench.n_cells;
    keep_clear = vertices;
    keep_clear.push_back(hex.center);
  }
  scene.accept_cell = [&keep_clear, excl](Vec2 c) { return clear_of(c, keep_clear, excl); };

  std::string last_error = "no attempt made";
  for (int k = 0; k < cfg.bench.scene_attempts; ++k) {
    try {
      sim::World w = sim::World::reset(scene, sp, layout_seed(cfg.seed, k));
      Scenario s{std::move(w), goal, -1, hex, vertices, k};
      if (cfg.task == Task::Transport) {
        const Vec2 mid = lerp(s.world.robot().position, goal, 0.5);
        s.selected_cell = nearest_cell(s.world, mid);
        if (s.selected_cell < 0 ||
            !pushable(s.world, s.selected_cell, goal, scene.robot_radius,
                      cfg.control.pre_contact_clearance)) {
          last_error = "selected cell cannot be approached from behind";
          continue;
        }
      }
      return s;
    } catch (const SceneGenerationError& e) {
      last_error = e.what();
    }
  }
  throw SceneGenerationError("seed " + std::to_string(cfg.seed) + ": no feasible layout in " +
                             std::to_string(cfg.bench.scene_attempts) + " attempts (" +
                             last_error + ")");
}

}  // namespace micropush::bench
