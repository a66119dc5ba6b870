#include <doctest.h>

#include "micropush/core/error.hpp"
#include "micropush/sim/params.hpp"

using namespace micropush;
using namespace micropush::sim;

TEST_CASE("defaults validate and derive the speed limit") {
  SimParams p;
  CHECK_NOTHROW(p.validate());
  CHECK(p.max_speed_px() == doctest::Approx(57.5));
  CHECK(p.normal_approach_cap == doctest::Approx(0.5 * (2 * 5.0 / 1.2) / 0.05 * 0.1));
}

TEST_CASE("parameter file round trip") {
  SimParams p;
  p.friction_coeff = 0.45;
  p.flow_enabled = true;
  p.projection_max_sweeps = 12;
  const SimParams q = parse_params(format_params(p));
  CHECK(q.friction_coeff == 0.45);
  CHECK(q.flow_enabled);
  CHECK(q.projection_max_sweeps == 12);
  CHECK(q.dt == p.dt);
}

TEST_CASE("unknown keys and bad values are rejected") {
  CHECK_THROWS_AS(parse_params("not_a_key = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_params("dt = fast\n"), ConfigError);
  CHECK_THROWS_AS(parse_params("dt = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_params("suction_reduction = 1.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_params("suction_base = 3\n"), ConfigError);
  const SimParams p = parse_params("# comment\n\ndt = 0.02  # inline\n");
  CHECK(p.dt == 0.02);
}
