#include "micropush/sim/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "micropush/core/error.hpp"
#include "micropush/kernels/kernels.hpp"
#include "micropush/sim/physics.hpp"

namespace micropush::sim {

World::World(SimParams params, std::vector<Body> bodies, std::uint64_t seed)
    : params_(params),
      bodies_(std::move(bodies)),
      seed_(seed),
      actuation_rng_(seed, StreamTag::Actuation),
      contact_rng_(seed, StreamTag::Contact) {
  params_.validate();
  if (bodies_.empty() || bodies_.front().kind != BodyKind::Robot) {
    throw ConfigError("world needs the robot as body 0");
  }
  for (std::size_t i = 0; i < bodies_.size(); ++i) {
    const Body& b = bodies_[i];
    if (i > 0 && b.kind == BodyKind::Robot) throw ConfigError("more than one robot");
    if (!(b.radius > 0.0) || !(b.drag_inverse > 0.0) || !b.position.finite()) {
      throw ConfigError("body " + std::to_string(b.id) + " has invalid geometry");
    }
  }
}

namespace {

bool inside_box(Vec2 p, Vec2 lo, Vec2 hi) {
  return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
}

}  // namespace

World World::reset(const SceneConfig& scene, const SimParams& params, std::uint64_t seed) {
  params.validate();
  if (scene.n_cells < 0) throw ConfigError("negative cell count");
  if (!(scene.robot_radius > 0.0) || !(scene.cell_radius > 0.0)) {
    throw ConfigError("body radii must be positive");
  }
  RngStream rng(seed, StreamTag::Scene);
  std::vector<Body> bodies;
  bodies.reserve(static_cast<std::size_t>(scene.n_cells) + 1);

  Body robot;
  robot.id = 0;
  robot.kind = BodyKind::Robot;
  robot.radius = scene.robot_radius;
  robot.drag_inverse = params.drag_inverse_robot;
  if (scene.robot_start) {
    robot.position = *scene.robot_start;
  } else {
    Vec2 lo = scene.robot_box_lo, hi = scene.robot_box_hi;
    if (hi.x <= lo.x || hi.y <= lo.y) {
      lo = {0.0, 0.0};
      hi = {params.width, params.height};
    }
    const double r = scene.robot_radius;
    lo = {std::max(lo.x, r), std::max(lo.y, r)};
    hi = {std::min(hi.x, params.width - r), std::min(hi.y, params.height - r)};
    if (hi.x < lo.x || hi.y < lo.y) throw SceneGenerationError("robot box lies outside the walls");
    robot.position = {rng.uniform(lo.x, hi.x), rng.uniform(lo.y, hi.y)};
  }
  bodies.push_back(robot);

  const double rc = scene.cell_radius;
  const Vec2 lo{rc, rc}, hi{params.width - rc, params.height - rc};
  for (int k = 0; k < scene.n_cells; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < scene.max_attempts_per_body && !placed; ++attempt) {
      const Vec2 c = scene.sample_cell ? scene.sample_cell(rng)
                                       : Vec2{rng.uniform(lo.x, hi.x), rng.uniform(lo.y, hi.y)};
      if (!inside_box(c, lo, hi)) continue;
      bool clear = true;
      for (const Body& b : bodies) {
        if (distance(c, b.position) < b.radius + rc + scene.min_gap) {
          clear = false;
          break;
        }
      }
      if (!clear || (scene.accept_cell && !scene.accept_cell(c))) continue;
      Body cell;
      cell.id = k + 1;
      cell.kind = BodyKind::Cell;
      cell.position = c;
      cell.radius = rc;
      cell.drag_inverse = params.drag_inverse_cell;
      bodies.push_back(cell);
      placed = true;
    }
    if (!placed) {
      throw SceneGenerationError("could not place cell " + std::to_string(k + 1) + " of " +
                                 std::to_string(scene.n_cells));
    }
  }
  return World(params, std::move(bodies), seed);
}

const Body* World::find(int id) const {
  for (const Body& b : bodies_) {
    if (b.id == id) return &b;
  }
  return nullptr;
}

Vec2 World::contact_normal(Vec2 pi, Vec2 pj) {
  const Vec2 d = pj - pi;
  const double dist = d.norm();
  if (dist > 0.0) return d / dist;
  ++stats_.degenerate_contacts;
  const double a = contact_rng_.uniform(-std::numbers::pi, std::numbers::pi);
  return Vec2::from_angle(a);
}

Observation World::step(const ActuationCommand& cmd) {
  validate_command(cmd, params_);
  const SimParams& p = params_;
  const std::size_t n = bodies_.size();

  // (a) actuation
  std::vector<Vec2> vel(n);
  const Vec2 drive = apply_actuation_noise(cmd, p, actuation_rng_);

  // (b) + (c) wall and Hertz forces, provisional velocities
  std::vector<Vec2> force(n);
  for (std::size_t i = 0; i < n; ++i) force[i] = wall_force(bodies_[i], p);

  xs_.resize(n);
  ys_.resize(n);
  rs_.resize(n);
  gaps_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs_[i] = bodies_[i].position.x;
    ys_[i] = bodies_[i].position.y;
    rs_[i] = bodies_[i].radius;
  }
  const double reach = std::max({p.suction_cap, p.guard_gap, 0.0});
  pairs_.clear();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t m = n - i - 1;
    kernels::disk_gaps(xs_[i], ys_[i], rs_[i], {xs_.data() + i + 1, m}, {ys_.data() + i + 1, m},
                       {rs_.data() + i + 1, m}, {gaps_.data(), m});
    for (std::size_t k = 0; k < m; ++k) {
      if (gaps_[k] > reach) continue;
      const std::size_t j = i + 1 + k;
      const Vec2 nrm = contact_normal(bodies_[i].position, bodies_[j].position);
      pairs_.push_back({static_cast<int>(i), static_cast<int>(j), nrm, gaps_[k]});
    }
  }
  std::vector<double> normal_force(pairs_.size(), 0.0);
  for (std::size_t q = 0; q < pairs_.size(); ++q) {
    const Pair& pr = pairs_[q];
    const double delta = -pr.h;
    if (delta <= 0.0) continue;
    const double f = p.hertz_stiffness * delta * std::sqrt(delta);
    normal_force[q] = f;
    force[pr.i] -= pr.n * f;
    force[pr.j] += pr.n * f;
  }
  for (std::size_t i = 0; i < n; ++i) {
    vel[i] = force[i] * bodies_[i].drag_inverse;
  }
  vel[0] += drive;

  // (d) pair corrections, stage by stage
  auto weights = [&](const Pair& pr) {
    const double gi = bodies_[pr.i].drag_inverse, gj = bodies_[pr.j].drag_inverse;
    return std::pair{gi / (gi + gj), gj / (gi + gj)};
  };
  for (std::size_t q = 0; q < pairs_.size(); ++q) {
    const Pair& pr = pairs_[q];
    if (normal_force[q] <= 0.0) continue;
    const FrictionResult fr =
        friction_correction(vel[pr.i] - vel[pr.j], pr.n, normal_force[q],
                            bodies_[pr.i].drag_inverse, bodies_[pr.j].drag_inverse,
                            p.friction_coeff, p.dt);
    vel[pr.i] += fr.dv_i;
    vel[pr.j] += fr.dv_j;
    if (fr.budget > 0.0) {
      stats_.max_friction_ratio = std::max(stats_.max_friction_ratio, fr.applied / fr.budget);
    }
  }
  for (const Pair& pr : pairs_) {
    if (pr.h > p.guard_gap) continue;
    const double closing = (vel[pr.i] - vel[pr.j]).dot(pr.n);
    if (closing <= p.normal_approach_cap) continue;
    const auto [wi, wj] = weights(pr);
    const double excess = closing - p.normal_approach_cap;
    vel[pr.i] -= pr.n * (wi * excess);
    vel[pr.j] += pr.n * (wj * excess);
  }
  for (const Pair& pr : pairs_) {
    const double closing = (vel[pr.i] - vel[pr.j]).dot(pr.n);
    const double clamped = guard_band_clamp(pr.h, closing, p.guard_gap);
    if (clamped == closing) continue;
    const auto [wi, wj] = weights(pr);
    const double change = closing - clamped;
    vel[pr.i] -= pr.n * (wi * change);
    vel[pr.j] += pr.n * (wj * change);
  }
  for (const Pair& pr : pairs_) {
    if (!p.near_field_all_pairs && pr.i != 0) continue;
    const double hdot = (vel[pr.j] - vel[pr.i]).dot(pr.n);
    const double damped = near_field_damping(pr.h, hdot, p);
    if (damped == hdot) continue;
    const auto [wi, wj] = weights(pr);
    const double change = hdot - damped;
    vel[pr.i] += pr.n * (wi * change);
    vel[pr.j] -= pr.n * (wj * change);
  }

  // (e) flow drift, (f) explicit Euler
  for (std::size_t i = 0; i < n; ++i) {
    vel[i] += flow_velocity(bodies_[i].position.y, p);
    bodies_[i].velocity = vel[i];
    bodies_[i].position += vel[i] * p.dt;
  }

  // (g) projection
  resolve_overlaps();

  // (h) counters
  ++step_count_;
  t_ = static_cast<double>(step_count_) * p.dt;
  return observe();
}

int World::resolve_overlaps() {
  const SimParams& p = params_;
  const std::size_t n = bodies_.size();
  auto clamp_body = [&](Body& b) {
    const Vec2 before = b.position;
    b.position.x = std::clamp(b.position.x, 0.0, p.width);
    b.position.y = std::clamp(b.position.y, 0.0, p.height);
    return !(b.position == before);
  };
  for (Body& b : bodies_) clamp_body(b);

  int sweeps = 0;
  double worst = 0.0;
  for (; sweeps < p.projection_max_sweeps; ++sweeps) {
    worst = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Body& a = bodies_[i];
        Body& b = bodies_[j];
        const double reach = a.radius + b.radius;
        const Vec2 d = b.position - a.position;
        const double dist2 = d.norm2();
        if (dist2 >= reach * reach) continue;
        const double dist = std::sqrt(dist2);
        const double delta = reach - dist;
        if (delta <= 0.0) continue;
        worst = std::max(worst, delta);
        const Vec2 nrm = dist > 0.0 ? d / dist : contact_normal(a.position, b.position);
        const double wa = a.drag_inverse / (a.drag_inverse + b.drag_inverse);
        a.position -= nrm * (delta * wa);
        b.position += nrm * (delta * (1.0 - wa));
        const bool a_pinned = clamp_body(a);
        const bool b_pinned = clamp_body(b);
        if (a_pinned == b_pinned) continue;
        // One side sits on a wall: the free body takes the remaining separation.
        Body& fixed = a_pinned ? a : b;
        Body& free = a_pinned ? b : a;
        const Vec2 e = free.position - fixed.position;
        const double len = e.norm();
        if (len >= reach) continue;
        const Vec2 dir = len > 0.0 ? e / len : (a_pinned ? nrm : -nrm);
        free.position = fixed.position + dir * reach;
        clamp_body(free);
      }
    }
    if (worst <= p.overlap_tolerance) break;
  }
  stats_.projection_sweeps = sweeps;
  stats_.max_overlap_after = max_overlap();
  return sweeps;
}

double World::max_overlap() const {
  double worst = bodies_.size() > 1 ? -std::numeric_limits<double>::infinity() : 0.0;
  const std::size_t n = bodies_.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(bodies_[i].position, bodies_[j].position);
      worst = std::max(worst, bodies_[i].radius + bodies_[j].radius - d);
    }
  }
  return worst;
}

Observation World::observe() const {
  const double s = params_.um_per_px;
  auto to_obs = [s](const Body& b) {
    BodyObservation o;
    o.id = b.id;
    o.position_px = b.position;
    o.velocity_px = b.velocity;
    o.position_um = b.position * s;
    o.velocity_um = b.velocity * s;
    o.radius_px = b.radius;
    o.radius_um = b.radius * s;
    return o;
  };
  Observation obs;
  obs.robot = to_obs(bodies_.front());
  obs.cells.reserve(bodies_.size() - 1);
  for (std::size_t i = 1; i < bodies_.size(); ++i) obs.cells.push_back(to_obs(bodies_[i]));
  obs.t = t_;
  obs.step = step_count_;
  return obs;
}

}  // namespace micropush::sim
