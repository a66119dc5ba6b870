#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "micropush/core/rng.hpp"
#include "micropush/core/vec2.hpp"
#include "micropush/sim/params.hpp"

namespace micropush::sim {

enum class BodyKind { Robot, Cell };

struct Body {
  int id = 0;
  BodyKind kind = BodyKind::Cell;
  Vec2 position;          ///< [px]
  Vec2 velocity;          ///< last applied velocity [px/s]
  double radius = 1.0;    ///< [px]
  double drag_inverse = 0.02;  ///< [px/s per force unit]
};

/// Drive command: rolling frequency and heading.
struct ActuationCommand {
  double omega = 0.0;  ///< [Hz], 0 <= omega <= omega_max
  double theta = 0.0;  ///< [rad]
};

/// Per-body slice of an observation, in both unit systems.
struct BodyObservation {
  int id = 0;
  Vec2 position_px, velocity_px;
  Vec2 position_um, velocity_um;
  double radius_px = 0.0, radius_um = 0.0;
};

struct Observation {
  BodyObservation robot;
  std::vector<BodyObservation> cells;
  double t = 0.0;
  std::int64_t step = 0;
};

/// Counters the step pipeline keeps for diagnostics and property tests.
struct StepStats {
  int projection_sweeps = 0;
  double max_overlap_after = 0.0;       ///< largest pairwise overlap after projection [px]
  double max_friction_ratio = 0.0;      ///< applied tangential correction / budget, <= 1
  std::int64_t degenerate_contacts = 0; ///< cumulative coincident-center events
};

/// Scene description for reset(). Bodies are placed by rejection sampling from
/// the seeded scene stream; the robot always gets id 0.
struct SceneConfig {
  int n_cells = 20;
  double robot_radius = 5.0 / 1.2;  ///< [px]
  double cell_radius = 5.0 / 1.2;   ///< [px]
  /// Robot start: fixed point, or uniform in [lo, hi] when not set.
  std::optional<Vec2> robot_start;
  Vec2 robot_box_lo{0.0, 0.0};
  Vec2 robot_box_hi{0.0, 0.0};      ///< zero box means "whole workspace"
  double min_gap = 0.5;             ///< smallest initial surface gap [px]
  int max_attempts_per_body = 20000;
  /// Optional extra acceptance test for cell centers (feasibility checks).
  std::function<bool(Vec2)> accept_cell;
  /// Optional sampler for cell centers; defaults to uniform inside the walls.
  std::function<Vec2(RngStream&)> sample_cell;
};

/// The single mutable simulation object.
class World {
 public:
  World(SimParams params, std::vector<Body> bodies, std::uint64_t seed);

  /// Deterministic placement of the robot and cells. Same seed, same world.
  static World reset(const SceneConfig& scene, const SimParams& params, std::uint64_t seed);

  /// Advances one step under `cmd`. Invalid commands throw CommandRejected
  /// before any state changes.
  Observation step(const ActuationCommand& cmd);

  Observation observe() const;

  const SimParams& params() const { return params_; }
  SimParams& mutable_params() { return params_; }
  std::span<const Body> bodies() const { return bodies_; }
  std::span<Body> mutable_bodies() { return bodies_; }
  const Body& robot() const { return bodies_.front(); }
  /// Body by id, or nullptr.
  const Body* find(int id) const;
  double time() const { return t_; }
  std::int64_t step_count() const { return step_count_; }
  std::uint64_t seed() const { return seed_; }
  const StepStats& stats() const { return stats_; }
  const RngStream& actuation_rng() const { return actuation_rng_; }

  /// Position-level projection, exposed for tests and tools.
  int resolve_overlaps();
  /// Largest pairwise overlap in the current state [px]; negative when every
  /// pair is apart (then it is minus the smallest gap).
  double max_overlap() const;

 private:
  SimParams params_;
  std::vector<Body> bodies_;
  std::uint64_t seed_;
  RngStream actuation_rng_;
  RngStream contact_rng_;
  double t_ = 0.0;
  std::int64_t step_count_ = 0;
  StepStats stats_;

  // Scratch, reused across steps.
  std::vector<double> xs_, ys_, rs_, gaps_;
  struct Pair {
    int i, j;
    Vec2 n;      ///< unit normal i -> j
    double h;    ///< surface gap [px], negative when overlapping
  };
  std::vector<Pair> pairs_;

  Vec2 contact_normal(Vec2 pi, Vec2 pj);
};

}  // namespace micropush::sim
