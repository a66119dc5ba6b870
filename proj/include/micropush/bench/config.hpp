#pragma once

#include <cstdint>
#include <string>

#include "micropush/control/controller.hpp"
#include "micropush/control/params.hpp"
#include "micropush/planning/planner.hpp"
#include "micropush/sim/params.hpp"
#include "micropush/task/assembly.hpp"

namespace micropush::bench {

enum class Task { Transport, Assembly };
std::string task_name(Task t);  ///< "transport" / "assembly"
Task parse_task(const std::string& s);

/// Protocol constants of the staged runner.
struct BenchParams {
  double r_succ = 0.5;               ///< success radius [px]
  double timeout = 40.0;             ///< [s]
  double approach_gain = 6.0;        ///< k_d [Hz/px]
  double waypoint_tolerance = 1.5;   ///< epsilon_wp [px]
  double omega_floor = 3.0;          ///< push-stage frequency floor [Hz]
  double replan_error_factor = 5.0;  ///< replan threshold in multiples of the path spacing
  int replan_steps = 20;             ///< consecutive steps above the threshold before a replan
  int n_cells = 20;
  int n_cells_flow = 1;              ///< cells in flow-on transport
  double robot_box_frac = 0.15;      ///< robot start box, fraction of W and H from the top-left
  double goal_frac = 0.85;           ///< transport goal at (goal_frac W, goal_frac H)
  double exclusion_margin = 0.5;     ///< added to the inflated cell disk in feasibility checks [px]
  int scene_attempts = 64;           ///< layouts tried before giving up

  int max_steps(double dt) const;    ///< ceil(timeout / dt)
  void validate() const;
};

/// Everything one episode depends on. Same config, same record.
struct EpisodeConfig {
  Task task = Task::Transport;
  planning::PlannerKind planner = planning::PlannerKind::AGP;
  control::ControlLaw controller = control::ControlLaw::MPC;
  bool flow_on = false;
  std::uint64_t seed = 0;
  sim::SimParams sim;
  control::ControlParams control = control::ControlParams::from_sim(sim::SimParams{});
  planning::PlannerConfig planning;
  BenchParams bench;
  double hex_radius_factor = 2.6;  ///< rho = factor * r_cell

  /// Throws ConfigError; assembly with flow is rejected.
  void validate() const;
  std::string combo() const;  ///< "AGP+MPC" etc.
};

/// Parameter overrides, `key = value` per line. Simulator keys are bare
/// (`dt`, `k_v`, ...); the others carry a prefix: `bench.`, `control.`,
/// `mpc.`, `pid.`, `planner.`. Unknown keys raise ConfigError.
void apply_param_text(EpisodeConfig& cfg, const std::string& text);
void apply_param_file(EpisodeConfig& cfg, const std::string& path);

}  // namespace micropush::bench
