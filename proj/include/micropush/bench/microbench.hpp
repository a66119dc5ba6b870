#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "micropush/bench/config.hpp"
#include "micropush/bench/metrics.hpp"

namespace micropush::bench {

/// Paired planner comparison on one static scene, delta = A* - AGP.
struct PlannerDelta {
  std::uint64_t seed = 0;
  double d_len_um = 0.0;
  double d_turn_rad = 0.0;
  double d_time_s = 0.0;
};

struct DeltaStats {
  int n = 0;
  double mean = 0.0;
  double median = 0.0;
  double frac_positive = 0.0;  ///< Pr(delta > 0)
};

struct MicrobenchResult {
  std::vector<PlannerDelta> rows;
  std::vector<std::uint64_t> excluded;  ///< seeds where a planner failed
  DeltaStats length, turning, time;
};

struct MicrobenchConfig {
  int seeds = 100;
  std::uint64_t seed0 = 0;
  int timing_repeats = 3;  ///< wall time is the median of this many calls
  EpisodeConfig base;      ///< scene geometry and planner parameters
};

MicrobenchResult run_planner_microbench(const MicrobenchConfig& cfg);
DeltaStats delta_stats(const std::vector<double>& d);

extern const char* const kMicrobenchHeader;
std::string microbench_csv(const MicrobenchResult& r);
std::string format_microbench(const MicrobenchResult& r);

}  // namespace micropush::bench
