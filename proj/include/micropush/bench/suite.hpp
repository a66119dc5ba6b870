#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "micropush/bench/episode.hpp"
#include "micropush/bench/metrics.hpp"

namespace micropush::bench {

/// Seeds of one (task, flow) block: base + block * stride + i.
inline constexpr std::uint64_t kSeedStride = 100000;
int seed_block(Task task, bool flow_on);  ///< transport/off 0, transport/on 1, assembly 2
std::uint64_t episode_seed(std::uint64_t base, Task task, bool flow_on, int i);

struct SuiteConfig {
  bool transport = true;
  bool assembly = true;
  bool flow_off = true;
  bool flow_on = true;
  int seeds_transport = 80;
  int seeds_hex = 30;
  std::uint64_t seed_base = 0;
  int jobs = 1;
  std::string dump_dir;  ///< empty: no trajectory dumps
  EpisodeConfig base;    ///< parameters shared by every episode
};

/// The episode matrix: flow-off transport and assembly over all four
/// planner/controller combinations, flow-on transport with AGP only.
std::vector<EpisodeConfig> expand_suite(const SuiteConfig& cfg);

/// Runs every config on a pool of `jobs` threads. Results keep the input
/// order. Scenes that cannot be generated are skipped and reported through
/// `on_skip`.
std::vector<EpisodeRecord> run_episodes(
    const std::vector<EpisodeConfig>& configs, int jobs, const std::string& dump_dir = {},
    const std::function<void(const EpisodeConfig&, const std::string&)>& on_skip = {});

struct SummaryRow {
  Task task = Task::Transport;
  bool flow_on = false;
  std::string combo;
  int n = 0;
  int successes = 0;
  double success_rate = 0.0;
  Interval ci;
  // Medians over successful episodes; NaN when there are none.
  double time = 0.0;
  double track_um = 0.0;
  double cell_path_um = 0.0;
  double planned_push_um = 0.0;
  double energy = 0.0;
};

/// One row per (task, flow, combination), in first-seen order.
std::vector<SummaryRow> summarize(const std::vector<EpisodeRecord>& records);
std::string format_summary(const std::vector<SummaryRow>& rows);

/// Per-combination success and median time of two runs that differ only
/// in one setting (a then b).
struct SensitivityRow {
  Task task = Task::Transport;
  bool flow_on = false;
  std::string combo;
  double success_a = 0.0, success_b = 0.0;
  double time_a = 0.0, time_b = 0.0;
};
std::vector<SensitivityRow> compare_runs(const std::vector<EpisodeRecord>& a,
                                         const std::vector<EpisodeRecord>& b);
std::string format_sensitivity(const std::vector<SensitivityRow>& rows, double r_a, double r_b);

}  // namespace micropush::bench
