#pragma once

#include <span>
#include <vector>

#include <json.hpp>

#include "micropush/core/vec2.hpp"
#include "micropush/sim/world.hpp"

namespace micropush::task {

struct HexSpec {
  Vec2 center;
  double radius = 2.6 * 5.0 / 1.2;              ///< rho [px]
  double rotation = 0.5235987755982988;         ///< phi = pi/6
  int vertex_count = 6;
};

/// v_j = c + rho (cos(2 pi j / K + phi), sin(2 pi j / K + phi)).
std::vector<Vec2> hex_vertices(const HexSpec& spec);

struct CellRef {
  int id = 0;
  Vec2 position;
};

struct AssignmentPair {
  int cell_id = 0;
  int vertex = 0;
  bool operator==(const AssignmentPair&) const = default;
};

struct Assignment {
  std::vector<AssignmentPair> pairs;
};

struct Subgoal {
  int cell_id = 0;
  int vertex = 0;
  Vec2 goal;
};

struct SubgoalSequence {
  std::vector<Subgoal> steps;
};

/// Problem data shared by the ordering and refinement steps.
struct AssemblyProblem {
  std::vector<CellRef> cells;
  std::vector<Vec2> vertices;
  Vec2 robot_start;

  Vec2 cell(int id) const;
};

/// B >= K: optimal sum-of-distances matching of K cells to the K vertices.
/// B < K: cells in angular order around `center` (measured from the hex
/// rotation) go to vertices 0..B-1. Pairs are listed by vertex index.
Assignment assign(std::span<const CellRef> cells, std::span<const Vec2> vertices, Vec2 center,
                  double rotation);

/// Placement term plus linking term:
/// J = sum |p_i - v_pi(i)| + |s - p_i1| + sum |v_pi(i_t) - p_i_t+1|.
double surrogate_cost(const SubgoalSequence& seq, const AssemblyProblem& prob);
double linking_cost(const SubgoalSequence& seq, const AssemblyProblem& prob);

struct OrderConfig {
  int start_choices = 3;
  int two_opt_passes = 4;
  int swap_passes = 64;
};

/// Greedy nearest-neighbor orders started from each of the `start_choices`
/// pairs nearest to s, the best kept by J, then 2-opt on the linking term.
SubgoalSequence order(const Assignment& a, const AssemblyProblem& prob, const OrderConfig& cfg = {});

/// Best-improvement pairwise vertex swaps while J decreases.
SubgoalSequence refine_swaps(const SubgoalSequence& seq, const AssemblyProblem& prob,
                             const OrderConfig& cfg = {});

struct AssemblyPlan {
  SubgoalSequence remaining;
  std::vector<AssignmentPair> pinned;  ///< cells already within r_succ of a vertex
  std::vector<Vec2> vertices;
};

/// assign -> order -> refine_swaps over the cells and vertices that are not
/// yet placed. `placed` pairs are pinned as given (completed subgoals); any
/// other cell within r_succ of a free vertex pins that vertex.
AssemblyPlan plan_assembly(std::span<const sim::Body> bodies, const HexSpec& spec, double r_succ,
                           const OrderConfig& cfg = {},
                           std::span<const AssignmentPair> placed = {});

nlohmann::json sequence_to_json(const SubgoalSequence& seq);

}  // namespace micropush::task
