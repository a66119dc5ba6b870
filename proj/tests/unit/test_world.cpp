#include <doctest.h>

#include <cmath>

#include "micropush/core/error.hpp"
#include "micropush/sim/physics.hpp"
#include "micropush/sim/serialize.hpp"
#include "micropush/sim/world.hpp"

using namespace micropush;
using namespace micropush::sim;

namespace {

SimParams quiet() {
  SimParams p;
  p.noise_speed_frac = 0.0;
  p.noise_heading = 0.0;
  return p;
}

Body make(int id, BodyKind kind, Vec2 pos, double r = 5.0 / 1.2) {
  Body b;
  b.id = id;
  b.kind = kind;
  b.position = pos;
  b.radius = r;
  b.drag_inverse = 0.02;
  return b;
}

World robot_only(const SimParams& p, Vec2 pos = {100, 70}) {
  return World(p, {make(0, BodyKind::Robot, pos)}, 1);
}

}  // namespace

TEST_CASE("free-space step displacement") {
  World w = robot_only(quiet());
  const Vec2 start = w.robot().position;
  w.step({10.0, 0.0});
  const Vec2 d = w.robot().position - start;
  CHECK(d.x == doctest::Approx(23.0 * 0.05 / 1.2).epsilon(1e-12));
  CHECK(d.y == 0.0);
  CHECK(w.step_count() == 1);
  CHECK(w.time() == doctest::Approx(0.05));
}

TEST_CASE("free-space speed is linear in frequency") {
  for (double omega : {0.5, 3.0, 10.0, 17.3, 30.0}) {
    World w = robot_only(quiet(), {20, 70});
    const Vec2 start = w.robot().position;
    for (int i = 0; i < 20; ++i) w.step({omega, 0.0});
    const double speed = (w.robot().position.x - start.x) / w.time();
    const double expected = 2.3 * omega / 1.2;
    CHECK(std::abs(speed - expected) / expected <= 1e-9);
  }
}

TEST_CASE("zero drive leaves isolated bodies in place") {
  SimParams p = quiet();
  World w(p, {make(0, BodyKind::Robot, {50, 50}), make(1, BodyKind::Cell, {120, 80})}, 3);
  for (int i = 0; i < 10; ++i) w.step({0.0, 1.0});
  CHECK(w.bodies()[0].position == Vec2{50, 50});
  CHECK(w.bodies()[1].position == Vec2{120, 80});
  CHECK(w.step_count() == 10);
}

TEST_CASE("rejected commands do not touch the state") {
  World w = robot_only(SimParams{});
  const auto before = w.actuation_rng();
  CHECK_THROWS_AS(w.step({40.0, 0.0}), CommandRejected);
  CHECK_THROWS_AS(w.step({10.0, std::nan("")}), CommandRejected);
  CHECK(w.step_count() == 0);
  CHECK(w.actuation_rng() == before);
  CHECK(w.robot().position == Vec2{100, 70});
}

TEST_CASE("reset is seed-deterministic and overlap-free") {
  SceneConfig scene;
  SimParams p;
  const World a = World::reset(scene, p, 7);
  const World b = World::reset(scene, p, 7);
  const World c = World::reset(scene, p, 8);
  REQUIRE(a.bodies().size() == 21);
  bool differs = false;
  for (std::size_t i = 0; i < a.bodies().size(); ++i) {
    CHECK(a.bodies()[i].position == b.bodies()[i].position);
    if (!(a.bodies()[i].position == c.bodies()[i].position)) differs = true;
  }
  CHECK(differs);
  CHECK(a.max_overlap() < 0.0);

  scene.n_cells = 0;
  CHECK(World::reset(scene, p, 7).bodies().size() == 1);

  scene.n_cells = 2000;
  scene.max_attempts_per_body = 50;
  CHECK_THROWS_AS(World::reset(scene, p, 7), SceneGenerationError);
}

TEST_CASE("projection") {
  SimParams p = quiet();
  SUBCASE("no overlap is the identity") {
    World w(p, {make(0, BodyKind::Robot, {50, 50}), make(1, BodyKind::Cell, {70, 50})}, 1);
    w.resolve_overlaps();
    CHECK(w.bodies()[1].position == Vec2{70, 50});
  }
  SUBCASE("symmetric split") {
    World w(p, {make(0, BodyKind::Robot, {50, 50}, 2.0), make(1, BodyKind::Cell, {53.8, 50}, 2.0)},
            1);
    w.resolve_overlaps();
    CHECK(w.bodies()[0].position.x == doctest::Approx(49.9));
    CHECK(w.bodies()[1].position.x == doctest::Approx(53.9));
  }
  SUBCASE("three-body chain converges") {
    World w(p,
            {make(0, BodyKind::Robot, {50, 50}, 2.0), make(1, BodyKind::Cell, {53, 50.2}, 2.0),
             make(2, BodyKind::Cell, {56, 49.9}, 2.0)},
            1);
    w.resolve_overlaps();
    CHECK(w.max_overlap() <= p.overlap_tolerance);
  }
  SUBCASE("a body pinned on a wall pushes its partner away") {
    World w(p, {make(0, BodyKind::Robot, {5, 70}, 4.0), make(1, BodyKind::Cell, {0.5, 70}, 4.0)},
            1);
    w.resolve_overlaps();
    CHECK(w.max_overlap() <= p.overlap_tolerance);
    CHECK(w.bodies()[1].position.x >= 0.0);
  }
}

TEST_CASE("two passive cells in contact respond symmetrically") {
  SimParams p = quiet();
  World w(p,
          {make(0, BodyKind::Robot, {10, 10}), make(1, BodyKind::Cell, {100, 70}),
           make(2, BodyKind::Cell, {107.5, 70})},
          1);
  const double mid = 0.5 * (w.bodies()[1].position.x + w.bodies()[2].position.x);
  for (int i = 0; i < 5; ++i) w.step({0.0, 0.0});
  CHECK(0.5 * (w.bodies()[1].position.x + w.bodies()[2].position.x) == doctest::Approx(mid));
  CHECK(w.bodies()[1].position.y == 70.0);
  CHECK(w.max_overlap() <= p.overlap_tolerance);
}

TEST_CASE("flow drift superposes on isolated bodies") {
  SimParams off = quiet();
  SimParams on = off;
  on.flow_enabled = true;
  const std::vector<Body> bodies{make(0, BodyKind::Robot, {30, 40}), make(1, BodyKind::Cell, {90, 100})};
  World a(off, bodies, 5), b(on, bodies, 5);
  a.step({8.0, 0.7});
  b.step({8.0, 0.7});
  for (std::size_t i = 0; i < 2; ++i) {
    const Vec2 diff = b.bodies()[i].position - a.bodies()[i].position;
    const Vec2 expect = flow_velocity(bodies[i].position.y, on) * on.dt;
    CHECK(diff.x == doctest::Approx(expect.x).epsilon(1e-12));
    CHECK(diff.y == doctest::Approx(0.0));
  }
}

TEST_CASE("identical seeds give bitwise-identical trajectories") {
  SceneConfig scene;
  SimParams p;
  World a = World::reset(scene, p, 11), b = World::reset(scene, p, 11);
  for (int i = 0; i < 300; ++i) {
    const ActuationCommand cmd{std::fmod(i * 0.37, 30.0), std::sin(i * 0.1) * 3.0};
    a.step(cmd);
    b.step(cmd);
  }
  for (std::size_t i = 0; i < a.bodies().size(); ++i) {
    CHECK(a.bodies()[i].position == b.bodies()[i].position);
    CHECK(a.bodies()[i].velocity == b.bodies()[i].velocity);
  }
}

TEST_CASE("robot pushes a cell and the overlap bound holds") {
  SimParams p = quiet();
  World w(p, {make(0, BodyKind::Robot, {40, 70}), make(1, BodyKind::Cell, {60, 70})}, 1);
  for (int i = 0; i < 40; ++i) {
    w.step({30.0, 0.0});
    CHECK(w.max_overlap() <= p.overlap_tolerance);
  }
  CHECK(w.bodies()[1].position.x > 70.0);
  CHECK(w.stats().max_friction_ratio <= 1.0);
}

TEST_CASE("observation units and json") {
  World w = robot_only(SimParams{});
  w.step({5.0, 0.3});
  const Observation o = w.observe();
  CHECK(o.robot.position_um == o.robot.position_px * 1.2);
  CHECK(o.robot.velocity_um == o.robot.velocity_px * 1.2);
  const auto j = observation_to_json(o);
  CHECK(j.contains("robot"));
  CHECK(j.contains("cells"));
  CHECK(j.contains("t"));
  CHECK(j.contains("step"));
  const Observation back = observation_from_json(j);
  CHECK(back.robot.position_px == o.robot.position_px);
  CHECK(back.step == 1);
}
