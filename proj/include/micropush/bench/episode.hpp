#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "micropush/bench/config.hpp"
#include "micropush/bench/scenario.hpp"
#include "micropush/control/controller.hpp"
#include "micropush/planning/polyline.hpp"
#include "micropush/task/assembly.hpp"

namespace micropush::bench {

enum class Status { Running, Success, Timeout };
std::string status_name(Status s);  ///< "running" / "success" / "timeout"

enum class Stage { Approach, Push };
std::string stage_name(Stage s);

/// One CSV row.
struct EpisodeRecord {
  std::uint64_t seed = 0;
  Task task = Task::Transport;
  planning::PlannerKind planner = planning::PlannerKind::AGP;
  control::ControlLaw controller = control::ControlLaw::MPC;
  bool flow_on = false;
  Status status = Status::Timeout;
  double sim_time_sec = 0.0;
  std::int64_t steps = 0;
  double track_cell_mean_um = 0.0;
  double cell_path_um = 0.0;
  double planned_push_um = 0.0;
  double energy_df_sum = 0.0;

  // Not in the CSV; kept for summaries and re-thresholding.
  double final_distance_px = 0.0;  ///< last pushed cell to its goal
  int placements = 0;              ///< subgoals completed
  int replans = 0;
  int solver_failures = 0;
};

/// What the runner did in one step.
struct StepFrame {
  double t = 0.0;
  std::int64_t step = 0;
  sim::ActuationCommand cmd;
  Stage stage = Stage::Approach;
  control::Phase phase = control::Phase::Approach;
  bool solver_ok = true;
  int active_cell = -1;
  Vec2 goal;
  bool plan_changed = false;  ///< approach or push polyline replaced in this step
};

/// Staged execution of one episode, advanced one simulator step at a time
/// so that a session can interleave it with other work.
class EpisodeRunner {
 public:
  /// Builds the scenario; throws SceneGenerationError.
  explicit EpisodeRunner(EpisodeConfig cfg);
  /// Runs on a scene built elsewhere (a live session world). The world's
  /// flow flag follows cfg.flow_on; its clock keeps running, so the step
  /// budget counts from the world's current step.
  EpisodeRunner(EpisodeConfig cfg, Scenario scene);

  bool done() const { return status_ != Status::Running; }
  Status status() const { return status_; }
  /// One simulator step. Throws std::logic_error once done.
  const StepFrame& step();
  /// Steps until done.
  void run();

  EpisodeRecord record() const;
  const EpisodeConfig& config() const { return cfg_; }
  const Scenario& scenario() const { return scene_; }
  const sim::World& world() const { return scene_.world; }
  const StepFrame& last_frame() const { return frame_; }
  int max_steps() const { return max_steps_; }

  Stage stage() const { return stage_; }
  int active_cell() const { return active_cell_; }
  Vec2 active_goal() const { return active_goal_; }
  const planning::Polyline& approach_path() const { return approach_path_; }
  const planning::Polyline& push_path() const { return push_path_; }
  std::size_t approach_index() const { return approach_idx_; }
  std::size_t push_index() const { return push_idx_; }
  const control::Diagnostics& diagnostics() const { return diag_; }
  const task::SubgoalSequence& remaining() const { return plan_.remaining; }
  const std::vector<task::AssignmentPair>& placed() const { return placed_; }

  /// Commanded omega of every step so far.
  const std::vector<double>& omega_log() const { return omega_log_; }
  /// Cell position after every push step, with the push polyline that was active.
  struct PushSample {
    Vec2 cell;
    int path_version = 0;
  };
  const std::vector<PushSample>& push_samples() const { return push_samples_; }
  const std::vector<planning::Polyline>& push_paths() const { return push_history_; }

  /// Trajectory-dump line for the current state and last frame.
  nlohmann::json frame_json() const;
  /// First dump line: config, scene and goals.
  nlohmann::json header_json() const;

 private:
  EpisodeConfig cfg_;
  Scenario scene_;
  int max_steps_ = 0;
  std::int64_t start_step_ = 0;
  Status status_ = Status::Running;
  Stage stage_ = Stage::Approach;
  StepFrame frame_;
  control::Diagnostics diag_;
  control::ControllerState ctrl_;

  task::AssemblyPlan plan_;
  std::vector<task::AssignmentPair> placed_;  ///< completed subgoals
  int active_vertex_ = -1;
  int active_cell_ = -1;
  Vec2 active_goal_;
  planning::Polyline approach_path_, push_path_;
  std::size_t approach_idx_ = 0, push_idx_ = 0;
  int far_steps_ = 0;
  bool plan_changed_ = false;

  std::vector<double> omega_log_;
  std::vector<PushSample> push_samples_;
  std::vector<planning::Polyline> push_history_;
  double track_sum_ = 0.0;
  double cell_path_ = 0.0;
  double planned_push_ = 0.0;
  int placements_ = 0;
  int replans_ = 0;
  int solver_failures_ = 0;

  Vec2 cell_pos(int id) const;
  bool at_goal(int id, Vec2 goal) const;
  void begin_subgoal(int cell_id, Vec2 goal);
  void plan_push();
  void plan_approach();
  bool next_assembly_subgoal();
  void check_terminal();
  sim::ActuationCommand approach_command();
  sim::ActuationCommand push_command();
};

/// Runs an episode to completion, optionally writing the JSON-lines dump.
EpisodeRecord run_episode(const EpisodeConfig& cfg, std::ostream* dump = nullptr);

}  // namespace micropush::bench
