#include "micropush/bench/episode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "micropush/bench/metrics.hpp"
#include "micropush/core/error.hpp"
#include "micropush/planning/planner.hpp"
#include "micropush/sim/serialize.hpp"

namespace micropush::bench {

std::string status_name(Status s) {
  switch (s) {
    case Status::Running: return "running";
    case Status::Success: return "success";
    case Status::Timeout: return "timeout";
  }
  return "?";
}

std::string stage_name(Stage s) { return s == Stage::Approach ? "approach" : "push"; }

namespace {

EpisodeConfig prepared(EpisodeConfig cfg) {
  cfg.sim.flow_enabled = cfg.flow_on;
  cfg.validate();
  return cfg;
}

// Planner output, or the straight segment when planning fails. The final
// vertex is always the exact target, even when the planner nudged it.
planning::Polyline plan_or_line(const sim::World& w, const planning::PlanRequest& req,
                                const EpisodeConfig& cfg) {
  planning::Polyline path;
  try {
    path = planning::plan_path(w.bodies(), w.params(), req, cfg.planner, cfg.planning).path;
  } catch (const PlanningError&) {
    path = planning::resample({{req.start, req.goal}}, cfg.planning.spacing);
  }
  if (path.empty()) path.vertices.push_back(req.start);
  if (distance(path.back(), req.goal) > 1e-9) path.vertices.push_back(req.goal);
  return path;
}

}  // namespace

EpisodeRunner::EpisodeRunner(EpisodeConfig cfg)
    : EpisodeRunner(cfg, generate_scenario(prepared(cfg))) {}

EpisodeRunner::EpisodeRunner(EpisodeConfig cfg, Scenario scene)
    : cfg_(prepared(std::move(cfg))),
      scene_(std::move(scene)),
      max_steps_(cfg_.bench.max_steps(cfg_.sim.dt)),
      start_step_(scene_.world.step_count()) {
  scene_.world.mutable_params().flow_enabled = cfg_.flow_on;
  if (cfg_.task == Task::Transport && !world().find(scene_.selected_cell)) {
    throw ConfigError("scene has no selected cell");
  }
  if (cfg_.task == Task::Transport) {
    active_cell_ = scene_.selected_cell;
    active_goal_ = scene_.goal;
    if (at_goal(active_cell_, active_goal_)) {
      status_ = Status::Success;
      return;
    }
    begin_subgoal(active_cell_, active_goal_);
  } else {
    next_assembly_subgoal();
  }
  frame_.stage = stage_;
  frame_.active_cell = active_cell_;
  frame_.goal = active_goal_;
  frame_.plan_changed = true;
}

Vec2 EpisodeRunner::cell_pos(int id) const { return world().find(id)->position; }

bool EpisodeRunner::at_goal(int id, Vec2 goal) const {
  return distance(cell_pos(id), goal) <= cfg_.bench.r_succ;
}

void EpisodeRunner::begin_subgoal(int cell_id, Vec2 goal) {
  active_cell_ = cell_id;
  active_goal_ = goal;
  stage_ = Stage::Approach;
  ctrl_ = {};
  far_steps_ = 0;
  plan_push();
  planned_push_ += planning::path_length(push_path_);
  plan_approach();
}

void EpisodeRunner::plan_push() {
  planning::PlanRequest req;
  req.start = cell_pos(active_cell_);
  req.goal = active_goal_;
  req.moving_radius = world().find(active_cell_)->radius;
  req.excluded_ids = {world().robot().id, active_cell_};
  push_path_ = plan_or_line(world(), req, cfg_);
  push_idx_ = 0;
  push_history_.push_back(push_path_);
  plan_changed_ = true;
}

void EpisodeRunner::plan_approach() {
  const Vec2 c = cell_pos(active_cell_);
  // Push direction toward the first push waypoint that is not on the cell.
  Vec2 ahead = active_goal_;
  for (const Vec2& v : push_path_.vertices) {
    if (distance(v, c) > cfg_.bench.waypoint_tolerance) {
      ahead = v;
      break;
    }
  }
  const Vec2 t = (ahead - c).normalized();
  const double r_r = world().robot().radius;
  const double r_c = world().find(active_cell_)->radius;
  Vec2 pre = c - t * (r_r + r_c + cfg_.control.pre_contact_clearance);
  pre = {std::clamp(pre.x, r_r, cfg_.sim.width - r_r), std::clamp(pre.y, r_r, cfg_.sim.height - r_r)};

  planning::PlanRequest req;
  req.start = world().robot().position;
  req.goal = pre;
  req.moving_radius = r_r;
  req.excluded_ids = {world().robot().id};
  approach_path_ = plan_or_line(world(), req, cfg_);
  approach_idx_ = 0;
  plan_changed_ = true;
}

bool EpisodeRunner::next_assembly_subgoal() {
  plan_ = task::plan_assembly(world().bodies(), scene_.hex, cfg_.bench.r_succ, {}, placed_);
  if (plan_.remaining.steps.empty()) {
    status_ = Status::Success;
    return false;
  }
  const task::Subgoal& sg = plan_.remaining.steps.front();
  active_vertex_ = sg.vertex;
  begin_subgoal(sg.cell_id, sg.goal);
  return true;
}

sim::ActuationCommand EpisodeRunner::approach_command() {
  const Vec2 p = world().robot().position;
  const Vec2 wp = approach_path_[approach_idx_];
  const double d = distance(p, wp);
  sim::ActuationCommand cmd;
  cmd.omega = std::clamp(cfg_.bench.approach_gain * d, 0.0, cfg_.sim.omega_max);
  cmd.theta = d > 0.0 ? (wp - p).angle() : ctrl_.theta_prev;
  ctrl_.theta_prev = cmd.theta;
  return cmd;
}

sim::ActuationCommand EpisodeRunner::push_command() {
  const Vec2 c = cell_pos(active_cell_);
  const double eps = cfg_.bench.waypoint_tolerance;
  const std::size_t last = push_path_.size() - 1;
  // A waypoint is done once the cell is near it or has passed it along the path.
  const double s_cell = planning::project_arclength(push_path_, c);
  while (push_idx_ < last) {
    const Vec2 v = push_path_[push_idx_];
    const double s_v = planning::project_arclength(push_path_, v);
    if (distance(c, v) <= eps || s_cell >= s_v) {
      ++push_idx_;
    } else {
      break;
    }
  }
  const Vec2 g = push_path_[push_idx_];
  sim::ActuationCommand cmd{0.0, ctrl_.theta_prev};
  try {
    const auto out = control_step(world().robot().position, world().robot().radius, c,
                                  world().find(active_cell_)->radius, g, cfg_.controller, ctrl_,
                                  cfg_.control, cfg_.sim);
    cmd = out.actuation;
    diag_ = out.diag;
    if (!out.diag.solver_ok) ++solver_failures_;
  } catch (const ReferenceError&) {
    // Cell sits on the waypoint; hold the heading for one step.
  }
  if (distance(c, active_goal_) > cfg_.bench.r_succ) {
    cmd.omega = std::max(cmd.omega, cfg_.bench.omega_floor);
  }
  return cmd;
}

const StepFrame& EpisodeRunner::step() {
  if (done()) throw std::logic_error("episode already finished");
  plan_changed_ = false;

  if (stage_ == Stage::Approach) {
    const Vec2 p = world().robot().position;
    const double eps = cfg_.bench.waypoint_tolerance;
    const std::size_t last = approach_path_.size() - 1;
    while (approach_idx_ < last && distance(p, approach_path_[approach_idx_]) <= eps) ++approach_idx_;
    if (approach_idx_ == last && distance(p, approach_path_[last]) <= eps) {
      stage_ = Stage::Push;
      ctrl_ = {};
    }
  }

  sim::ActuationCommand cmd;
  if (stage_ == Stage::Approach) {
    cmd = approach_command();
    diag_ = {};
    diag_.omega = cmd.omega;
  } else {
    cmd = push_command();
  }

  const Vec2 cell_before = cell_pos(active_cell_);
  scene_.world.step(cmd);
  omega_log_.push_back(cmd.omega);

  frame_ = {};
  frame_.t = world().time();
  frame_.step = world().step_count();
  frame_.cmd = cmd;
  frame_.stage = stage_;
  frame_.phase = diag_.phase;
  frame_.solver_ok = diag_.solver_ok;

  if (stage_ == Stage::Push) {
    const Vec2 c = cell_pos(active_cell_);
    const double err = planning::point_polyline_distance(c, push_path_);
    track_sum_ += err;
    cell_path_ += distance(c, cell_before);
    push_samples_.push_back({c, static_cast<int>(push_history_.size()) - 1});
    far_steps_ = err > cfg_.bench.replan_error_factor * cfg_.planning.spacing ? far_steps_ + 1 : 0;
    if (far_steps_ >= cfg_.bench.replan_steps) {
      plan_push();
      ++replans_;
      far_steps_ = 0;
    }
  }

  check_terminal();
  frame_.active_cell = active_cell_;
  frame_.goal = active_goal_;
  frame_.plan_changed = plan_changed_;
  return frame_;
}

void EpisodeRunner::check_terminal() {
  if (at_goal(active_cell_, active_goal_)) {
    ++placements_;
    if (cfg_.task == Task::Transport) {
      status_ = Status::Success;
      return;
    }
    // A completed subgoal stays done; later contacts do not reopen it.
    placed_.push_back({active_cell_, active_vertex_});
    if (!next_assembly_subgoal()) return;
  }
  if (world().step_count() - start_step_ >= max_steps_) status_ = Status::Timeout;
}

void EpisodeRunner::run() {
  while (!done()) step();
}

EpisodeRecord EpisodeRunner::record() const {
  EpisodeRecord r;
  r.seed = cfg_.seed;
  r.task = cfg_.task;
  r.planner = cfg_.planner;
  r.controller = cfg_.controller;
  r.flow_on = cfg_.flow_on;
  r.status = status_ == Status::Success ? Status::Success : Status::Timeout;
  r.steps = world().step_count() - start_step_;
  r.sim_time_sec = static_cast<double>(r.steps) * cfg_.sim.dt;
  const double um = cfg_.sim.um_per_px;
  r.track_cell_mean_um =
      push_samples_.empty() ? 0.0 : track_sum_ / static_cast<double>(push_samples_.size()) * um;
  r.cell_path_um = cell_path_ * um;
  r.planned_push_um = planned_push_ * um;
  r.energy_df_sum = actuation_variation(omega_log_);
  r.final_distance_px = distance(cell_pos(active_cell_), active_goal_);
  r.placements = placements_;
  r.replans = replans_;
  r.solver_failures = solver_failures_;
  return r;
}

nlohmann::json EpisodeRunner::header_json() const {
  nlohmann::json verts = nlohmann::json::array();
  for (const Vec2& v : scene_.vertices) verts.push_back({v.x, v.y});
  nlohmann::json h = {{"type", "header"},
                      {"seed", cfg_.seed},
                      {"task", task_name(cfg_.task)},
                      {"planner", planning::planner_name(cfg_.planner)},
                      {"controller", control::law_name(cfg_.controller)},
                      {"flow_on", cfg_.flow_on},
                      {"r_succ", cfg_.bench.r_succ},
                      {"dt", cfg_.sim.dt},
                      {"width", cfg_.sim.width},
                      {"height", cfg_.sim.height},
                      {"um_per_px", cfg_.sim.um_per_px},
                      {"max_steps", max_steps_},
                      {"goal", {scene_.goal.x, scene_.goal.y}},
                      {"hex_center", {scene_.hex.center.x, scene_.hex.center.y}},
                      {"hex_vertices", std::move(verts)},
                      {"initial", sim::observation_to_json(world().observe())}};
  if (cfg_.task == Task::Transport) h["selected_cell"] = scene_.selected_cell;
  return h;
}

nlohmann::json EpisodeRunner::frame_json() const {
  nlohmann::json j = sim::observation_to_json(world().observe());
  j["type"] = "frame";
  j["omega"] = frame_.cmd.omega;
  j["theta"] = frame_.cmd.theta;
  j["stage"] = stage_name(frame_.stage);
  j["phase"] = control::phase_name(frame_.phase);
  j["solver_ok"] = frame_.solver_ok;
  j["active_cell"] = frame_.active_cell;
  j["goal"] = {frame_.goal.x, frame_.goal.y};
  j["status"] = status_name(status_);
  if (frame_.stage == Stage::Push) j["p_ref"] = {diag_.p_ref.x, diag_.p_ref.y};
  if (frame_.plan_changed) {
    j["approach_path"] = planning::polyline_to_json(approach_path_);
    j["push_path"] = planning::polyline_to_json(push_path_);
  }
  return j;
}

EpisodeRecord run_episode(const EpisodeConfig& cfg, std::ostream* dump) {
  EpisodeRunner runner(cfg);
  if (dump) {
    *dump << runner.header_json().dump() << '\n';
    *dump << runner.frame_json().dump() << '\n';
  }
  while (!runner.done()) {
    runner.step();
    if (dump) *dump << runner.frame_json().dump() << '\n';
  }
  return runner.record();
}

}  // namespace micropush::bench
