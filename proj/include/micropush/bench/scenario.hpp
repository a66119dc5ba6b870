#pragma once

#include <vector>

#include "micropush/bench/config.hpp"
#include "micropush/sim/world.hpp"
#include "micropush/task/assembly.hpp"

namespace micropush::bench {

struct Scenario {
  sim::World world;
  Vec2 goal;             ///< transport goal [px]
  int selected_cell = -1;  ///< transport: the pushed cell
  task::HexSpec hex;
  std::vector<Vec2> vertices;
  int layout_attempt = 0;  ///< 0 when the first layout passed the checks
};

/// Radius around a cell center that other bodies' targets must avoid:
/// the cell inflated by a same-size mover plus the margin.
double exclusion_radius(const EpisodeConfig& cfg);

/// Seed-deterministic scene. Layouts that fail the feasibility checks are
/// redrawn with a derived seed; SceneGenerationError after the budget.
Scenario generate_scenario(const EpisodeConfig& cfg);

/// Seed used for layout attempt `k` (k = 0 is the episode seed itself).
std::uint64_t layout_seed(std::uint64_t seed, int k);

}  // namespace micropush::bench
