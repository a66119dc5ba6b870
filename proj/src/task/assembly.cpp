#include "micropush/task/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "micropush/core/error.hpp"
#include "micropush/task/hungarian.hpp"

namespace micropush::task {

std::vector<Vec2> hex_vertices(const HexSpec& spec) {
  if (!(spec.radius > 0.0) || spec.vertex_count < 1) throw ConfigError("invalid hexagon spec");
  std::vector<Vec2> v;
  v.reserve(static_cast<std::size_t>(spec.vertex_count));
  for (int j = 0; j < spec.vertex_count; ++j) {
    const double a = 2.0 * std::numbers::pi * j / spec.vertex_count + spec.rotation;
    v.push_back(spec.center + Vec2{std::cos(a), std::sin(a)} * spec.radius);
  }
  return v;
}

Vec2 AssemblyProblem::cell(int id) const {
  for (const CellRef& c : cells) {
    if (c.id == id) return c.position;
  }
  throw ConfigError("unknown cell id " + std::to_string(id));
}

Assignment assign(std::span<const CellRef> cells, std::span<const Vec2> vertices, Vec2 center,
                  double rotation) {
  Assignment out;
  const std::size_t b = cells.size(), k = vertices.size();
  if (b == 0 || k == 0) return out;
  if (b >= k) {
    // Rows are vertices so that rows <= columns.
    std::vector<std::vector<double>> cost(k, std::vector<double>(b));
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < b; ++i) cost[j][i] = distance(cells[i].position, vertices[j]);
    }
    const std::vector<int> col = hungarian(cost);
    for (std::size_t j = 0; j < k; ++j) out.pairs.push_back({cells[col[j]].id, static_cast<int>(j)});
    return out;
  }
  std::vector<std::size_t> idx(b);
  for (std::size_t i = 0; i < b; ++i) idx[i] = i;
  auto rel_angle = [&](std::size_t i) {
    double a = std::fmod((cells[i].position - center).angle() - rotation, 2.0 * std::numbers::pi);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    return a;
  };
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    const double ax = rel_angle(x), ay = rel_angle(y);
    if (ax != ay) return ax < ay;
    return cells[x].id < cells[y].id;
  });
  for (std::size_t t = 0; t < b; ++t) out.pairs.push_back({cells[idx[t]].id, static_cast<int>(t)});
  return out;
}

double linking_cost(const SubgoalSequence& seq, const AssemblyProblem& prob) {
  if (seq.steps.empty()) return 0.0;
  double j = distance(prob.robot_start, prob.cell(seq.steps.front().cell_id));
  for (std::size_t t = 1; t < seq.steps.size(); ++t) {
    j += distance(prob.vertices[seq.steps[t - 1].vertex], prob.cell(seq.steps[t].cell_id));
  }
  return j;
}

double surrogate_cost(const SubgoalSequence& seq, const AssemblyProblem& prob) {
  double place = 0.0;
  for (const Subgoal& s : seq.steps) place += distance(prob.cell(s.cell_id), prob.vertices[s.vertex]);
  return place + linking_cost(seq, prob);
}

namespace {

Subgoal make_step(const AssignmentPair& p, const AssemblyProblem& prob) {
  return {p.cell_id, p.vertex, prob.vertices[p.vertex]};
}

SubgoalSequence greedy_from(std::size_t first, const std::vector<AssignmentPair>& pairs,
                            const AssemblyProblem& prob) {
  SubgoalSequence seq;
  std::vector<char> used(pairs.size(), 0);
  std::size_t cur = first;
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    used[cur] = 1;
    seq.steps.push_back(make_step(pairs[cur], prob));
    const Vec2 at = prob.vertices[pairs[cur].vertex];
    double best = std::numeric_limits<double>::infinity();
    std::size_t next = pairs.size();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (used[i]) continue;
      const double d = distance(at, prob.cell(pairs[i].cell_id));
      if (d < best) {
        best = d;
        next = i;
      }
    }
    if (next == pairs.size()) break;
    cur = next;
  }
  return seq;
}

}  // namespace

SubgoalSequence order(const Assignment& a, const AssemblyProblem& prob, const OrderConfig& cfg) {
  std::vector<AssignmentPair> pairs = a.pairs;
  std::sort(pairs.begin(), pairs.end(), [](const AssignmentPair& x, const AssignmentPair& y) {
    return x.cell_id != y.cell_id ? x.cell_id < y.cell_id : x.vertex < y.vertex;
  });
  SubgoalSequence best;
  if (pairs.empty()) return best;

  std::vector<std::size_t> starts(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) starts[i] = i;
  std::stable_sort(starts.begin(), starts.end(), [&](std::size_t x, std::size_t y) {
    return distance(prob.robot_start, prob.cell(pairs[x].cell_id)) <
           distance(prob.robot_start, prob.cell(pairs[y].cell_id));
  });
  starts.resize(std::min<std::size_t>(starts.size(), std::max(1, cfg.start_choices)));
  double best_j = std::numeric_limits<double>::infinity();
  for (std::size_t s : starts) {
    SubgoalSequence cand = greedy_from(s, pairs, prob);
    const double j = surrogate_cost(cand, prob);
    if (j < best_j) {
      best_j = j;
      best = std::move(cand);
    }
  }

  // 2-opt: reverse a block of the visiting order when it shortens the links.
  const std::size_t n = best.steps.size();
  for (int pass = 0; pass < cfg.two_opt_passes; ++pass) {
    bool improved = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t k = i + 1; k < n; ++k) {
        SubgoalSequence cand = best;
        std::reverse(cand.steps.begin() + static_cast<long>(i),
                     cand.steps.begin() + static_cast<long>(k) + 1);
        const double j = linking_cost(cand, prob);
        if (j < linking_cost(best, prob)) {
          best = std::move(cand);
          improved = true;
        }
      }
    }
    if (!improved) break;
  }
  return best;
}

SubgoalSequence refine_swaps(const SubgoalSequence& seq, const AssemblyProblem& prob,
                             const OrderConfig& cfg) {
  SubgoalSequence cur = seq;
  double cur_j = surrogate_cost(cur, prob);
  for (int pass = 0; pass < cfg.swap_passes; ++pass) {
    double best_j = cur_j;
    std::size_t bi = 0, bk = 0;
    for (std::size_t i = 0; i < cur.steps.size(); ++i) {
      for (std::size_t k = i + 1; k < cur.steps.size(); ++k) {
        SubgoalSequence cand = cur;
        std::swap(cand.steps[i].vertex, cand.steps[k].vertex);
        std::swap(cand.steps[i].goal, cand.steps[k].goal);
        const double j = surrogate_cost(cand, prob);
        if (j < best_j) {
          best_j = j;
          bi = i;
          bk = k;
        }
      }
    }
    if (!(best_j < cur_j)) break;
    std::swap(cur.steps[bi].vertex, cur.steps[bk].vertex);
    std::swap(cur.steps[bi].goal, cur.steps[bk].goal);
    cur_j = best_j;
  }
  return cur;
}

AssemblyPlan plan_assembly(std::span<const sim::Body> bodies, const HexSpec& spec, double r_succ,
                           const OrderConfig& cfg, std::span<const AssignmentPair> placed) {
  AssemblyPlan plan;
  plan.vertices = hex_vertices(spec);
  AssemblyProblem prob;
  prob.vertices = plan.vertices;
  std::vector<char> vertex_taken(plan.vertices.size(), 0);
  std::vector<int> placed_ids;
  for (const AssignmentPair& p : placed) {
    if (p.vertex < 0 || p.vertex >= static_cast<int>(plan.vertices.size()) || vertex_taken[p.vertex])
      continue;
    vertex_taken[p.vertex] = 1;
    placed_ids.push_back(p.cell_id);
    plan.pinned.push_back(p);
  }
  std::vector<CellRef> free_cells;
  for (const sim::Body& b : bodies) {
    if (b.kind == sim::BodyKind::Robot) {
      prob.robot_start = b.position;
      continue;
    }
    prob.cells.push_back({b.id, b.position});
    if (std::find(placed_ids.begin(), placed_ids.end(), b.id) != placed_ids.end()) continue;
    int pin = -1;
    for (std::size_t j = 0; j < plan.vertices.size(); ++j) {
      if (!vertex_taken[j] && distance(b.position, plan.vertices[j]) <= r_succ) {
        pin = static_cast<int>(j);
        break;
      }
    }
    if (pin >= 0) {
      vertex_taken[pin] = 1;
      plan.pinned.push_back({b.id, pin});
    } else {
      free_cells.push_back({b.id, b.position});
    }
  }
  std::vector<Vec2> open_vertices;
  std::vector<int> open_index;
  for (std::size_t j = 0; j < plan.vertices.size(); ++j) {
    if (vertex_taken[j]) continue;
    open_vertices.push_back(plan.vertices[j]);
    open_index.push_back(static_cast<int>(j));
  }
  if (open_vertices.empty() || free_cells.empty()) return plan;
  Assignment a = assign(free_cells, open_vertices, spec.center, spec.rotation);
  for (AssignmentPair& p : a.pairs) p.vertex = open_index[p.vertex];
  plan.remaining = refine_swaps(order(a, prob, cfg), prob, cfg);
  return plan;
}

nlohmann::json sequence_to_json(const SubgoalSequence& seq) {
  nlohmann::json a = nlohmann::json::array();
  for (const Subgoal& s : seq.steps) {
    a.push_back({{"cell_id", s.cell_id}, {"vertex", s.vertex}, {"goal", {s.goal.x, s.goal.y}}});
  }
  return a;
}

}  // namespace micropush::task
