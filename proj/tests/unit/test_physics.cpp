#include <doctest.h>

#include <cmath>

#include "micropush/core/error.hpp"
#include "micropush/sim/physics.hpp"

using namespace micropush;
using namespace micropush::sim;

TEST_CASE("calibrated speed") {
  SimParams p;
  CHECK(calibrated_speed(10.0, p) == doctest::Approx(23.0));
  CHECK(calibrated_speed(0.0, p) == 0.0);
  CHECK(calibrated_speed(30.0, p) == doctest::Approx(69.0));
  CHECK_THROWS_AS(calibrated_speed(30.5, p), CommandRejected);
  CHECK_THROWS_AS(calibrated_speed(-1.0, p), CommandRejected);
}

TEST_CASE("actuation noise") {
  SimParams p;
  SUBCASE("zero noise reproduces the calibration") {
    p.noise_speed_frac = 0.0;
    p.noise_heading = 0.0;
    RngStream rng(1, StreamTag::Actuation);
    const Vec2 u = apply_actuation_noise({10.0, 0.0}, p, rng);
    CHECK(u.x == doctest::Approx(23.0 / 1.2));
    CHECK(u.y == 0.0);
  }
  SUBCASE("bounded speed factor and heading offset") {
    RngStream rng(3, StreamTag::Actuation);
    const double v0 = 23.0 / 1.2;
    for (int i = 0; i < 5000; ++i) {
      const Vec2 u = apply_actuation_noise({10.0, 0.5}, p, rng);
      CHECK(u.norm() >= 0.98 * v0 - 1e-12);
      CHECK(u.norm() <= 1.02 * v0 + 1e-12);
      CHECK(std::abs(u.angle() - 0.5) <= 0.02 + 1e-12);
    }
  }
  SUBCASE("same stream state, same output") {
    RngStream a(9, StreamTag::Actuation), b(9, StreamTag::Actuation);
    const Vec2 ua = apply_actuation_noise({12.0, 1.0}, p, a);
    const Vec2 ub = apply_actuation_noise({12.0, 1.0}, p, b);
    CHECK(ua == ub);
  }
}

TEST_CASE("wall force") {
  SimParams p;
  p.wall_stiffness = 2.0;
  Body b;
  b.radius = 3.0;
  b.position = {100.0, 70.0};
  CHECK(wall_force(b, p) == Vec2{0.0, 0.0});
  b.position = {1.0, 70.0};
  CHECK(wall_force(b, p).x == doctest::Approx(4.0));
  b.position = {p.width - 1.0, 70.0};
  CHECK(wall_force(b, p).x == doctest::Approx(-4.0));
  b.position = {70.0, p.height - 0.5};
  CHECK(wall_force(b, p).y == doctest::Approx(-5.0));
}

TEST_CASE("hertz normal law") {
  auto c = hertz_normal({0, 0}, {5, 0}, 2.0, 2.0, 1.0);
  CHECK(c.magnitude == 0.0);
  c = hertz_normal({0, 0}, {3, 0}, 2.0, 2.0, 1.0);
  CHECK(c.magnitude == doctest::Approx(1.0));
  CHECK(c.normal == Vec2{1.0, 0.0});
  c = hertz_normal({0, 0}, {0, 2}, 3.0, 3.0, 2.0);
  CHECK(c.magnitude == doctest::Approx(16.0));
  CHECK_THROWS_AS(hertz_normal({1, 1}, {1, 1}, 1.0, 1.0, 1.0), DegenerateContact);
}

TEST_CASE("friction correction") {
  const Vec2 n{1.0, 0.0};
  SUBCASE("budget") {
    const auto r = friction_correction({0.0, 0.05}, n, 2.0, 1.0, 1.0, 0.5, 0.05);
    CHECK(r.budget == doctest::Approx(0.1));
  }
  SUBCASE("stick cancels the tangential relative velocity") {
    const Vec2 v_rel{0.3, 0.05};
    const auto r = friction_correction(v_rel, n, 2.0, 1.0, 1.0, 0.5, 0.05);
    CHECK(r.stick);
    const Vec2 after = v_rel + r.dv_i - r.dv_j;
    CHECK(after.y == doctest::Approx(0.0));
    CHECK(after.x == doctest::Approx(0.3));
  }
  SUBCASE("slip removes exactly the budget") {
    const Vec2 v_rel{0.0, -0.25};
    const auto r = friction_correction(v_rel, n, 2.0, 1.0, 1.0, 0.5, 0.05);
    CHECK_FALSE(r.stick);
    const Vec2 after = v_rel + r.dv_i - r.dv_j;
    CHECK(after.y == doctest::Approx(-0.15));
  }
  SUBCASE("split follows the drag inverses") {
    const auto r = friction_correction({0.0, 0.01}, n, 2.0, 3.0, 1.0, 0.5, 0.05);
    CHECK(r.dv_i.y == doctest::Approx(-0.0075));
    CHECK(r.dv_j.y == doctest::Approx(0.0025));
  }
}

TEST_CASE("near-field damping") {
  SimParams p;
  CHECK(near_field_damping(0.2, -1.0, p) == -1.0);
  CHECK(near_field_damping(0.5 * p.suction_base, 1.0, p) == doctest::Approx(0.5));
  CHECK(near_field_threshold(1e6, p) == p.suction_cap);
  CHECK(near_field_threshold(0.0, p) == p.suction_base);
  CHECK(near_field_damping(5.0, 1.0, p) == 1.0);
  for (double hd = 0.01; hd < 100; hd *= 1.7) {
    const double d = near_field_damping(0.3, hd, p);
    CHECK(d <= hd);
    CHECK(d >= 0.0);
  }
}

TEST_CASE("guard band") {
  const double g = 0.05;
  CHECK(guard_band_clamp(g / 2, 3.0, g) == 0.0);
  CHECK(guard_band_clamp(2 * g, 3.0, g) == 3.0);
  CHECK(guard_band_clamp(g / 2, -3.0, g) == -3.0);
}

TEST_CASE("poiseuille flow") {
  SimParams p;
  CHECK(flow_velocity(p.height / 2, p) == Vec2{0.0, 0.0});
  p.flow_enabled = true;
  CHECK(flow_velocity(p.height / 2, p).x == doctest::Approx(5.0 / 1.2));
  CHECK(flow_velocity(0.0, p).x == doctest::Approx(0.0));
  CHECK(flow_velocity(p.height, p).x == doctest::Approx(0.0));
  CHECK(flow_velocity(p.height / 2, p).y == 0.0);
}
