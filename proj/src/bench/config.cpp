#include "micropush/bench/config.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "micropush/core/error.hpp"
#include "micropush/core/keyvalue.hpp"

namespace micropush::bench {

std::string task_name(Task t) { return t == Task::Transport ? "transport" : "assembly"; }

Task parse_task(const std::string& s) {
  if (s == "transport") return Task::Transport;
  if (s == "assembly" || s == "hex") return Task::Assembly;
  throw ConfigError("unknown task '" + s + "'");
}

int BenchParams::max_steps(double dt) const {
  // The ratio of two decimal inputs may land a hair above an integer.
  return static_cast<int>(std::ceil(timeout / dt - 1e-9));
}

void BenchParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("bench parameter violates ") + what);
  };
  require(r_succ > 0.0, "r_succ > 0");
  require(timeout > 0.0, "timeout > 0");
  require(approach_gain > 0.0, "approach_gain > 0");
  require(waypoint_tolerance > 0.0, "waypoint_tolerance > 0");
  require(omega_floor >= 0.0, "omega_floor >= 0");
  require(replan_error_factor > 0.0 && replan_steps >= 1, "positive replan trigger");
  require(n_cells >= 1 && n_cells_flow >= 1, "at least one cell");
  require(robot_box_frac > 0.0 && robot_box_frac <= 1.0, "0 < robot_box_frac <= 1");
  require(goal_frac > 0.0 && goal_frac < 1.0, "0 < goal_frac < 1");
  require(scene_attempts >= 1, "scene_attempts >= 1");
}

void EpisodeConfig::validate() const {
  sim.validate();
  control.validate();
  bench.validate();
  if (task == Task::Assembly && flow_on) throw ConfigError("assembly runs without flow");
  if (bench.omega_floor > sim.omega_max) throw ConfigError("omega_floor exceeds omega_max");
  if (!(hex_radius_factor > 0.0)) throw ConfigError("hex radius must be positive");
}

std::string EpisodeConfig::combo() const {
  return planning::planner_name(planner) + "+" + control::law_name(controller);
}

namespace {

using Setter = std::function<void(EpisodeConfig&, const KeyValue&)>;

#define MP_D(key, field) {key, [](EpisodeConfig& c, const KeyValue& kv) { c.field = parse_double(kv); }}
#define MP_I(key, field) {key, [](EpisodeConfig& c, const KeyValue& kv) { c.field = parse_int(kv); }}
#define MP_B(key, field) {key, [](EpisodeConfig& c, const KeyValue& kv) { c.field = parse_bool(kv); }}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> m = {
      MP_D("bench.r_succ", bench.r_succ),
      MP_D("bench.timeout", bench.timeout),
      MP_D("bench.approach_gain", bench.approach_gain),
      MP_D("bench.waypoint_tolerance", bench.waypoint_tolerance),
      MP_D("bench.omega_floor", bench.omega_floor),
      MP_D("bench.replan_error_factor", bench.replan_error_factor),
      MP_I("bench.replan_steps", bench.replan_steps),
      MP_I("bench.n_cells", bench.n_cells),
      MP_I("bench.n_cells_flow", bench.n_cells_flow),
      MP_D("bench.robot_box_frac", bench.robot_box_frac),
      MP_D("bench.goal_frac", bench.goal_frac),
      MP_D("bench.exclusion_margin", bench.exclusion_margin),
      MP_I("bench.scene_attempts", bench.scene_attempts),
      MP_D("bench.hex_radius_factor", hex_radius_factor),
      MP_D("control.pre_contact_clearance", control.pre_contact_clearance),
      MP_D("control.contact_tolerance", control.contact_tolerance),
      MP_D("control.keep_factor", control.keep_factor),
      MP_D("control.speed_limit", control.speed_limit),
      MP_D("control.rate_limit", control.rate_limit),
      MP_I("control.transition_steps", control.transition_steps),
      MP_D("control.alignment_threshold", control.alignment_threshold),
      MP_D("control.realign_threshold", control.realign_threshold),
      MP_D("control.direction_change_threshold", control.direction_change_threshold),
      MP_I("control.revert_steps", control.revert_steps),
      MP_D("control.near_zero_speed", control.near_zero_speed),
      MP_I("mpc.horizon", control.mpc.horizon),
      MP_D("mpc.q_pos", control.mpc.q_pos),
      MP_D("mpc.r_ctl", control.mpc.r_ctl),
      MP_D("mpc.s_smooth", control.mpc.s_smooth),
      MP_D("mpc.qf_scale", control.mpc.qf_scale),
      MP_D("pid.k_p", control.pid.k_p),
      MP_D("pid.k_i", control.pid.k_i),
      MP_D("pid.k_d", control.pid.k_d),
      MP_D("pid.derivative_filter", control.pid.derivative_filter),
      MP_D("pid.integral_clamp", control.pid.integral_clamp),
      MP_D("planner.agp_alpha", planning.agp_alpha),
      MP_D("planner.margin", planning.margin),
      MP_I("planner.agp_max_waypoints", planning.agp_max_waypoints),
      MP_D("planner.astar_weight", planning.astar_weight),
      MP_D("planner.spacing", planning.spacing),
      MP_B("planner.fallback_to_astar", planning.fallback_to_astar),
  };
  return m;
}

#undef MP_D
#undef MP_I
#undef MP_B

}  // namespace

void apply_param_text(EpisodeConfig& cfg, const std::string& text) {
  bool limits_given = false;
  bool sim_changed = false;
  for (const KeyValue& kv : parse_key_values(text)) {
    if (auto it = setters().find(kv.key); it != setters().end()) {
      it->second(cfg, kv);
      if (kv.key == "control.speed_limit" || kv.key == "control.rate_limit") limits_given = true;
    } else if (sim::set_param(cfg.sim, kv.key, kv.value)) {
      sim_changed = true;
    } else {
      throw ConfigError("line " + std::to_string(kv.line) + ": unknown parameter '" + kv.key + "'");
    }
  }
  // The command limits follow the actuation calibration unless pinned.
  if (sim_changed && !limits_given) {
    const auto derived = control::ControlParams::from_sim(cfg.sim);
    cfg.control.speed_limit = derived.speed_limit;
    cfg.control.rate_limit = derived.rate_limit;
  }
}

void apply_param_file(EpisodeConfig& cfg, const std::string& path) {
  apply_param_text(cfg, read_text_file(path));
}

}  // namespace micropush::bench
