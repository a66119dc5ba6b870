#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "micropush/core/rng.hpp"
#include "micropush/task/assembly.hpp"
#include "micropush/task/hungarian.hpp"
#include "support/oracles.hpp"

using namespace micropush;
using namespace micropush::task;

namespace {

double assignment_distance(const Assignment& a, const std::vector<CellRef>& cells,
                           const std::vector<Vec2>& verts) {
  double s = 0.0;
  for (const auto& p : a.pairs) {
    for (const auto& c : cells) {
      if (c.id == p.cell_id) s += distance(c.position, verts[p.vertex]);
    }
  }
  return s;
}

// Direct transcription of the surrogate objective, independent of the library.
double formula_j(const std::vector<CellRef>& cells, const std::vector<Vec2>& verts,
                 const std::vector<std::pair<int, int>>& seq, Vec2 s) {
  auto pos = [&](int id) {
    for (const auto& c : cells) {
      if (c.id == id) return c.position;
    }
    return Vec2{};
  };
  double j = 0.0;
  for (const auto& [id, v] : seq) j += distance(pos(id), verts[v]);
  j += distance(s, pos(seq[0].first));
  for (std::size_t t = 1; t < seq.size(); ++t) j += distance(verts[seq[t - 1].second], pos(seq[t].first));
  return j;
}

}  // namespace

TEST_CASE("hex vertices") {
  const auto v = hex_vertices({{0, 0}, 1.0, std::numbers::pi / 6, 6});
  CHECK(v[0].x == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK(v[0].y == doctest::Approx(0.5));
  for (const Vec2& p : v) CHECK(p.norm() == doctest::Approx(1.0));
  CHECK(HexSpec{}.radius == doctest::Approx(10.8333).epsilon(1e-4));
  // Rotating by 2 pi / K permutes the vertex set cyclically.
  const auto w = hex_vertices({{3, 4}, 5.0, std::numbers::pi / 6 + std::numbers::pi / 3, 6});
  const auto u = hex_vertices({{3, 4}, 5.0, std::numbers::pi / 6, 6});
  for (int j = 0; j < 6; ++j) {
    CHECK(distance(w[j], u[(j + 1) % 6]) < 1e-9);
  }
}

TEST_CASE("hungarian against exhaustive enumeration, 200 instances") {
  RngStream r(31, StreamTag::Planner);
  const auto verts = hex_vertices({{100, 70}, 10.83, std::numbers::pi / 6, 6});
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t b = 6 + rep % 3;
    std::vector<CellRef> cells;
    std::vector<Vec2> pts;
    for (std::size_t i = 0; i < b; ++i) {
      const Vec2 p{r.uniform(0, 200), r.uniform(0, 140)};
      cells.push_back({static_cast<int>(i) + 1, p});
      pts.push_back(p);
    }
    const Assignment a = assign(cells, verts, {100, 70}, std::numbers::pi / 6);
    REQUIRE(a.pairs.size() == 6);
    CHECK(assignment_distance(a, cells, verts) == doctest::Approx(oracle::brute_force_cost(pts, verts)).epsilon(1e-12));
  }
}

TEST_CASE("assignment corner cases") {
  const auto verts = hex_vertices({{50, 50}, 10.0, std::numbers::pi / 6, 6});
  SUBCASE("cells on vertices") {
    std::vector<CellRef> cells;
    for (int j = 0; j < 6; ++j) cells.push_back({j + 1, verts[j]});
    const Assignment a = assign(cells, verts, {50, 50}, std::numbers::pi / 6);
    for (const auto& p : a.pairs) CHECK(p.cell_id == p.vertex + 1);
    CHECK(assignment_distance(a, cells, verts) == doctest::Approx(0.0));
  }
  SUBCASE("fewer cells than vertices") {
    std::vector<CellRef> cells{{1, {80, 50}}, {2, {50, 90}}, {3, {20, 50}}};
    const Assignment a = assign(cells, verts, {50, 50}, std::numbers::pi / 6);
    REQUIRE(a.pairs.size() == 3);
    // Angles from pi/6: cell 2 (pi/2), cell 3 (pi), cell 1 (0 -> 11 pi / 6).
    CHECK(a.pairs[0] == AssignmentPair{2, 0});
    CHECK(a.pairs[1] == AssignmentPair{3, 1});
    CHECK(a.pairs[2] == AssignmentPair{1, 2});
  }
  SUBCASE("rectangular hungarian picks distinct columns") {
    const std::vector<std::vector<double>> c{{1, 2, 3}, {1, 5, 9}};
    const auto cols = hungarian(c);
    CHECK(cols[0] != cols[1]);
    CHECK(assignment_cost(c, cols) == doctest::Approx(3.0));
  }
}

TEST_CASE("surrogate cost") {
  RngStream r(8, StreamTag::Planner);
  for (int rep = 0; rep < 50; ++rep) {
    AssemblyProblem prob;
    prob.vertices = hex_vertices({{100, 70}, 10.83, std::numbers::pi / 6, 3});
    prob.robot_start = {r.uniform(0, 200), r.uniform(0, 140)};
    for (int i = 0; i < 3; ++i) prob.cells.push_back({i + 1, {r.uniform(0, 200), r.uniform(0, 140)}});
    SubgoalSequence seq;
    const std::vector<std::pair<int, int>> raw{{2, 1}, {3, 0}, {1, 2}};
    for (auto [id, v] : raw) seq.steps.push_back({id, v, prob.vertices[v]});
    CHECK(surrogate_cost(seq, prob) == doctest::Approx(formula_j(prob.cells, prob.vertices, raw, prob.robot_start)));
  }
  SUBCASE("single pair") {
    AssemblyProblem prob{{{1, {3, 4}}}, {{0, 0}}, {3, 10}};
    SubgoalSequence seq{{{1, 0, {0, 0}}}};
    CHECK(surrogate_cost(seq, prob) == doctest::Approx(5.0 + 6.0));
  }
}

TEST_CASE("ordering") {
  SUBCASE("single pair") {
    AssemblyProblem prob{{{4, {3, 4}}}, {{0, 0}}, {3, 10}};
    const auto seq = order(Assignment{{{4, 0}}}, prob);
    REQUIRE(seq.steps.size() == 1);
    CHECK(seq.steps[0].cell_id == 4);
  }
  SUBCASE("collinear targets give a monotone sweep") {
    AssemblyProblem prob;
    Assignment a;
    for (int i = 0; i < 6; ++i) {
      prob.cells.push_back({i + 1, {10.0 * i, 0.0}});
      prob.vertices.push_back({10.0 * i, 0.0});
      a.pairs.push_back({i + 1, i});
    }
    prob.robot_start = {-10, 0};
    const auto seq = order(a, prob);
    // Oracle: best linking cost over all 720 orders.
    std::vector<int> perm{0, 1, 2, 3, 4, 5};
    double best = INFINITY;
    do {
      SubgoalSequence s;
      for (int p : perm) s.steps.push_back({p + 1, p, prob.vertices[p]});
      best = std::min(best, linking_cost(s, prob));
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(linking_cost(seq, prob) == doctest::Approx(best));
    for (int i = 0; i < 6; ++i) CHECK(seq.steps[i].cell_id == i + 1);
  }
  SUBCASE("2-opt never worsens the best greedy start") {
    RngStream r(12, StreamTag::Planner);
    for (int rep = 0; rep < 100; ++rep) {
      AssemblyProblem prob;
      Assignment a;
      prob.vertices = hex_vertices({{100, 70}, 10.83, std::numbers::pi / 6, 6});
      prob.robot_start = {r.uniform(0, 200), r.uniform(0, 140)};
      for (int i = 0; i < 6; ++i) {
        prob.cells.push_back({i + 1, {r.uniform(0, 200), r.uniform(0, 140)}});
        a.pairs.push_back({i + 1, i});
      }
      OrderConfig no_opt;
      no_opt.two_opt_passes = 0;
      const auto greedy = order(a, prob, no_opt);
      const auto opt = order(a, prob);
      CHECK(linking_cost(opt, prob) <= linking_cost(greedy, prob) + 1e-12);
      const auto a1 = order(a, prob);
      for (std::size_t i = 0; i < a1.steps.size(); ++i) CHECK(a1.steps[i].cell_id == opt.steps[i].cell_id);
    }
  }
}

TEST_CASE("swap refinement") {
  SUBCASE("crossed pair is uncrossed") {
    AssemblyProblem prob{{{1, {0, 0}}, {2, {10, 0}}}, {{0, 5}, {10, 5}}, {0, -5}};
    SubgoalSequence crossed{{{1, 1, {10, 5}}, {2, 0, {0, 5}}}};
    const auto out = refine_swaps(crossed, prob);
    CHECK(out.steps[0].vertex == 0);
    CHECK(out.steps[1].vertex == 1);
    CHECK(surrogate_cost(out, prob) < surrogate_cost(crossed, prob));
  }
  SUBCASE("descent on random instances") {
    RngStream r(14, StreamTag::Planner);
    for (int rep = 0; rep < 100; ++rep) {
      AssemblyProblem prob;
      prob.vertices = hex_vertices({{100, 70}, 10.83, std::numbers::pi / 6, 6});
      prob.robot_start = {r.uniform(0, 200), r.uniform(0, 140)};
      SubgoalSequence seq;
      for (int i = 0; i < 6; ++i) {
        prob.cells.push_back({i + 1, {r.uniform(0, 200), r.uniform(0, 140)}});
        seq.steps.push_back({i + 1, (i * 5) % 6, prob.vertices[(i * 5) % 6]});
      }
      const auto out = refine_swaps(seq, prob);
      CHECK(surrogate_cost(out, prob) <= surrogate_cost(seq, prob));
      const auto again = refine_swaps(out, prob);
      CHECK(surrogate_cost(again, prob) == surrogate_cost(out, prob));
    }
  }
}

TEST_CASE("plan_assembly pins placed cells") {
  HexSpec spec;
  spec.center = {100, 70};
  const auto verts = hex_vertices(spec);
  auto body = [](int id, Vec2 p) {
    sim::Body b;
    b.id = id;
    b.kind = id == 0 ? sim::BodyKind::Robot : sim::BodyKind::Cell;
    b.position = p;
    b.radius = 5.0 / 1.2;
    return b;
  };
  SUBCASE("all placed") {
    std::vector<sim::Body> bodies{body(0, {10, 10})};
    for (int j = 0; j < 6; ++j) bodies.push_back(body(j + 1, verts[j]));
    const auto plan = plan_assembly(bodies, spec, 0.5);
    CHECK(plan.remaining.steps.empty());
    CHECK(plan.pinned.size() == 6);
  }
  SUBCASE("mid-task replan") {
    std::vector<sim::Body> bodies{body(0, {10, 10}), body(1, verts[2] + Vec2{0.1, 0}),
                                  body(2, verts[4] + Vec2{0, -0.2})};
    RngStream r(2, StreamTag::Planner);
    for (int i = 3; i <= 12; ++i) bodies.push_back(body(i, {r.uniform(10, 60), r.uniform(10, 130)}));
    const auto plan = plan_assembly(bodies, spec, 0.5);
    CHECK(plan.pinned.size() == 2);
    REQUIRE(plan.remaining.steps.size() == 4);
    for (const auto& s : plan.remaining.steps) {
      CHECK(s.cell_id != 1);
      CHECK(s.cell_id != 2);
      CHECK(s.vertex != 2);
      CHECK(s.vertex != 4);
    }
    const auto plan2 = plan_assembly(bodies, spec, 0.5);
    for (std::size_t i = 0; i < 4; ++i) CHECK(plan2.remaining.steps[i].cell_id == plan.remaining.steps[i].cell_id);
  }
}
