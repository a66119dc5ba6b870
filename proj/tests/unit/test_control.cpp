#include <doctest.h>

#include <cmath>
#include <numbers>

#include "micropush/control/controller.hpp"
#include "micropush/core/error.hpp"
#include "micropush/core/rng.hpp"
#include "micropush/sim/world.hpp"
#include "support/oracles.hpp"

using namespace micropush;
using namespace micropush::control;

namespace {

const double kR = 5.0 / 1.2;


}  // namespace

TEST_CASE("reference geometry") {
  ControlParams p;
  p.keep_factor = 0.5;
  const auto g = reference_geometry({0, 0}, {50, 50}, {60, 50}, kR, kR, p);
  CHECK(g.p_pre.x == doctest::Approx(50 - (2 * kR + 0.8)));
  CHECK(g.p_pre.x == doctest::Approx(40.8667).epsilon(1e-4));
  CHECK(g.p_pre.y == doctest::Approx(50));
  CHECK(g.p_push.x == doctest::Approx(50 - 6.25));
  CHECK(distance(g.p_push, {50, 50}) < distance(g.p_pre, {50, 50}));
  p.keep_factor = 0.25;
  const auto g2 = reference_geometry({0, 0}, {50, 50}, {60, 50}, kR, kR, p);
  CHECK(g2.p_push.x == doctest::Approx(50 - 1.25 * kR));
  CHECK_THROWS_AS(reference_geometry({0, 0}, {5, 5}, {5, 5}, kR, kR, p), ReferenceError);
}

TEST_CASE("reference phases") {
  ControlParams p;
  const Vec2 cell{50, 50}, goal{90, 50};
  const auto g = reference_geometry({0, 0}, cell, goal, kR, kR, p);
  ReferenceState st;
  SUBCASE("far away tracks the pre-contact point") {
    CHECK(reference_point({10, 10}, cell, goal, kR, kR, st, p) == g.p_pre);
    CHECK(st.phase == Phase::Approach);
  }
  SUBCASE("arrival at p_pre starts a linear transition") {
    Vec2 prev = reference_point(g.p_pre, cell, goal, kR, kR, st, p);
    CHECK(st.phase == Phase::Transition);
    CHECK(prev == lerp(g.p_pre, g.p_push, 0.1));
    for (int k = 2; k <= 10; ++k) prev = reference_point(g.p_pre, cell, goal, kR, kR, st, p);
    CHECK(st.phase == Phase::Push);
    CHECK(distance(prev, g.p_push) < 1e-12);
  }
  SUBCASE("half-way progress is the midpoint") {
    st.phase = Phase::Transition;
    st.transition_progress = 0.4;
    const Vec2 r = reference_point(g.p_pre, cell, goal, kR, kR, st, p);
    CHECK(distance(r, lerp(g.p_pre, g.p_push, 0.5)) < 1e-12);
  }
  SUBCASE("misaligned arrival waits") {
    const Vec2 side = cell + Vec2{0, -(2 * kR + 0.2)};
    reference_point(side, cell, goal, kR, kR, st, p);
    CHECK(st.phase == Phase::Approach);
  }
  SUBCASE("direction mode reverts on abrupt direction change") {
    st.direction_mode = true;
    reference_point(g.p_pre, cell, goal, kR, kR, st, p);
    CHECK(st.phase == Phase::Transition);
    const Vec2 flipped{10, 50};
    const auto g2 = reference_geometry({0, 0}, cell, flipped, kR, kR, p);
    for (int k = 0; k < p.revert_steps; ++k) {
      CHECK(reference_point(g.p_pre, cell, flipped, kR, kR, st, p) == g2.p_pre);
    }
    CHECK(st.revert_timer == 0);
  }
}

TEST_CASE("mpc closed forms") {
  MpcParams p;
  const auto at_rest = mpc_solve({5, 5}, {5, 5}, {0, 0}, 0.05, p);
  CHECK(at_rest.ok);
  CHECK(at_rest.first().norm() < 1e-12);
  MpcParams db;
  db.horizon = 1;
  db.s_smooth = 0.0;
  db.r_ctl = 0.0;
  const auto dead = mpc_solve({1, 2}, {4, -2}, {9, 9}, 0.05, db);
  CHECK(dead.first().x == doctest::Approx(3.0 / 0.05));
  CHECK(dead.first().y == doctest::Approx(-4.0 / 0.05));
}

TEST_CASE("mpc against a dense KKT oracle, 100 instances") {
  RngStream r(77, StreamTag::Planner);
  MpcParams p;
  for (int rep = 0; rep < 100; ++rep) {
    const Vec2 x{r.uniform(0, 200), r.uniform(0, 140)}, ref{r.uniform(0, 200), r.uniform(0, 140)};
    const Vec2 up{r.uniform(-50, 50), r.uniform(-50, 50)};
    const auto sol = mpc_solve(x, ref, up, 0.05, p);
    REQUIRE(sol.ok);
    const auto oracle = oracle::mpc_kkt(x, ref, up, 0.05, p);
    for (int k = 0; k < p.horizon; ++k) {
      CHECK(distance(sol.u[k], oracle[k]) <= 1e-6);
    }
    const auto grad = mpc_gradient(x, ref, up, sol.u, 0.05, p);
    double res = 0.0;
    for (const Vec2& gk : grad) res = std::max({res, std::abs(gk.x), std::abs(gk.y)});
    CHECK(res <= 1e-8);
  }
}

TEST_CASE("mpc gradient matches finite differences and vanishes at the optimum") {
  RngStream r(5, StreamTag::Planner);
  MpcParams p;
  for (int rep = 0; rep < 20; ++rep) {
    const Vec2 x{r.uniform(0, 200), r.uniform(0, 140)}, ref{r.uniform(0, 200), r.uniform(0, 140)};
    const Vec2 up{r.uniform(-50, 50), r.uniform(-50, 50)};
    std::vector<Vec2> u(p.horizon);
    for (auto& v : u) v = {r.uniform(-50, 50), r.uniform(-50, 50)};
    const auto g = mpc_gradient(x, ref, up, u, 0.05, p);
    const double h = 1e-4;
    for (int k = 0; k < p.horizon; ++k) {
      auto a = u, b = u;
      a[k].x += h;
      b[k].x -= h;
      const double fd = (mpc_cost(x, ref, up, a, 0.05, p) - mpc_cost(x, ref, up, b, 0.05, p)) / (2 * h);
      CHECK(fd == doctest::Approx(g[k].x).epsilon(1e-6));
    }
    // Finite-difference gradient at the solution, relative to the gradient scale.
    const auto sol = mpc_solve(x, ref, up, 0.05, p);
    double fd_norm = 0.0, scale = 0.0;
    for (int k = 0; k < p.horizon; ++k) {
      for (int axis = 0; axis < 2; ++axis) {
        auto a = sol.u, b = sol.u;
        (axis ? a[k].y : a[k].x) += h;
        (axis ? b[k].y : b[k].x) -= h;
        const double fd = (mpc_cost(x, ref, up, a, 0.05, p) - mpc_cost(x, ref, up, b, 0.05, p)) / (2 * h);
        fd_norm = std::max(fd_norm, std::abs(fd));
      }
    }
    for (const Vec2& gk : g) scale = std::max({scale, std::abs(gk.x), std::abs(gk.y)});
    CHECK(fd_norm / scale <= 1e-6);
  }
}

TEST_CASE("mpc solution beats random perturbations") {
  RngStream r(6, StreamTag::Planner);
  MpcParams p;
  const Vec2 x{20, 30}, ref{60, 45}, up{5, -3};
  const auto sol = mpc_solve(x, ref, up, 0.05, p);
  const double best = mpc_cost(x, ref, up, sol.u, 0.05, p);
  for (int rep = 0; rep < 1000; ++rep) {
    auto u = sol.u;
    const double scale = std::pow(10.0, r.uniform(-4, 1));
    for (auto& v : u) v += Vec2{r.uniform(-1, 1), r.uniform(-1, 1)} * scale;
    CHECK(mpc_cost(x, ref, up, u, 0.05, p) >= best);
  }
}

TEST_CASE("mpc smoothing weight never increases the first-step jump") {
  RngStream r(8, StreamTag::Planner);
  for (int rep = 0; rep < 20; ++rep) {
    const Vec2 x{r.uniform(0, 200), r.uniform(0, 140)}, ref{r.uniform(0, 200), r.uniform(0, 140)};
    const Vec2 up{r.uniform(-50, 50), r.uniform(-50, 50)};
    double prev = INFINITY;
    for (double s : {0.0, 0.01, 0.05, 0.2, 1.0, 5.0, 50.0}) {
      MpcParams p;
      p.s_smooth = s;
      const double jump = distance(mpc_solve(x, ref, up, 0.05, p).first(), up);
      CHECK(jump <= prev + 1e-9);
      prev = jump;
    }
  }
}

TEST_CASE("pid") {
  PidParams p;
  SUBCASE("first step is proportional only") {
    PidState s;
    const Vec2 u = pid_update({1, 0}, s, 0.05, p);
    CHECK(u.x == doctest::Approx(4.0));
    CHECK(u.y == 0.0);
  }
  SUBCASE("zero error stays at zero") {
    PidState s;
    for (int k = 0; k < 10; ++k) CHECK(pid_update({0, 0}, s, 0.05, p) == Vec2{0, 0});
  }
  SUBCASE("filtered derivative decays geometrically") {
    PidState s;
    s.seeded = true;
    s.e_prev = {1, 0};
    s.de_filtered = {10, 0};
    double prev = 10.0;
    for (int k = 0; k < 10; ++k) {
      pid_update({1, 0}, s, 0.05, p);
      CHECK(s.de_filtered.x == doctest::Approx(0.6 * prev));
      prev = s.de_filtered.x;
    }
  }
  SUBCASE("anti-windup clamp") {
    PidParams q = p;
    q.k_i = 1.0;
    PidState s;
    for (int k = 0; k < 10000; ++k) {
      pid_update({100, -100}, s, 0.05, q);
      CHECK(std::abs(s.integral.x) <= q.integral_clamp);
      CHECK(std::abs(s.integral.y) <= q.integral_clamp);
    }
  }
}

TEST_CASE("command limits") {
  ControlParams p;
  const double vm = p.speed_limit;
  CHECK(limit_command({10, 0}, {8, 0}, p) == Vec2{10, 0});
  const Vec2 a = limit_command({2 * vm, 0}, {vm, 0}, p);
  CHECK(a.x == doctest::Approx(vm));
  const Vec2 b = limit_command({0, 50}, {0, 0}, p);
  CHECK(b.norm() == doctest::Approx(p.rate_limit));

  RngStream r(19, StreamTag::Planner);
  sim::SimParams sp;
  Vec2 prev;
  for (int k = 0; k < 20000; ++k) {
    const Vec2 u{r.uniform(-1e4, 1e4) * (k % 3 == 0 ? 1e-3 : 1.0), r.uniform(-1e4, 1e4)};
    const Vec2 out = limit_command(u, prev, p);
    CHECK(out.norm() <= vm * (1 + 1e-12));
    CHECK((out - prev).norm() <= p.rate_limit * (1 + 1e-12));
    const auto cmd = to_actuation(out, 0.0, sp);
    CHECK(cmd.omega >= 0.0);
    CHECK(cmd.omega <= sp.omega_max);
    prev = out;
  }
}

TEST_CASE("actuation mapping") {
  sim::SimParams sp;
  const auto c = to_actuation({23.0 / 1.2, 0}, 0.0, sp);
  CHECK(c.omega == doctest::Approx(10.0));
  CHECK(c.theta == 0.0);
  const auto z = to_actuation({0, 0}, 1.25, sp);
  CHECK(z.omega == 0.0);
  CHECK(z.theta == 1.25);
  CHECK(to_actuation({1000, 0}, 0.0, sp).omega == 30.0);
  RngStream r(4, StreamTag::Planner);
  for (int k = 0; k < 1000; ++k) {
    const double omega = r.uniform(0.01, 30.0), theta = r.uniform(-3.1, 3.1);
    const Vec2 u = Vec2::from_angle(theta) * (sp.k_v * omega / sp.um_per_px);
    const auto cmd = to_actuation(u, 0.0, sp);
    const Vec2 back = Vec2::from_angle(cmd.theta) * (sp.k_v * cmd.omega / sp.um_per_px);
    CHECK(distance(back, u) <= 1e-9 * std::max(1.0, u.norm()));
  }
}

TEST_CASE("control step") {
  sim::SimParams sp;
  const ControlParams cp = ControlParams::from_sim(sp);
  SUBCASE("at the reference and at rest") {
    const Vec2 cell{50, 50}, goal{90, 50};
    const auto g = reference_geometry({0, 0}, cell, goal, kR, kR, cp);
    for (ControlLaw law : {ControlLaw::MPC, ControlLaw::PID}) {
      ControllerState st;
      st.ref.phase = Phase::Push;
      const Vec2 off{0, 5 * kR};
      const auto out = control_step(g.p_push + off, kR, cell + off, kR, goal + off, law, st, cp, sp);
      CHECK(out.actuation.omega == doctest::Approx(0.0));
    }
  }
  SUBCASE("closed-loop straight push shrinks the goal distance") {
    for (ControlLaw law : {ControlLaw::MPC, ControlLaw::PID}) {
      sim::SimParams quiet = sp;
      quiet.noise_speed_frac = 0.0;
      quiet.noise_heading = 0.0;
      sim::Body robot{0, sim::BodyKind::Robot, {30, 70}, {}, kR, 0.02};
      sim::Body cell{1, sim::BodyKind::Cell, {60, 70}, {}, kR, 0.02};
      sim::World w(quiet, {robot, cell}, 1);
      const Vec2 goal{160, 70};
      ControllerState st;
      double prev = distance(w.bodies()[1].position, goal);
      for (int k = 0; k < 200; ++k) {
        const auto out = control_step(w.bodies()[0].position, kR, w.bodies()[1].position, kR, goal,
                                      law, st, cp, quiet);
        w.step(out.actuation);
        const double d = distance(w.bodies()[1].position, goal);
        CHECK(d <= prev + 1e-9);
        prev = d;
      }
      CHECK(prev < 85.0);
    }
  }
}
