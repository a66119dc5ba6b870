#include "micropush/sim/physics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "micropush/core/error.hpp"

namespace micropush::sim {

void validate_command(const ActuationCommand& cmd, const SimParams& p) {
  if (!std::isfinite(cmd.omega) || cmd.omega < 0.0 || cmd.omega > p.omega_max) {
    throw CommandRejected("drive frequency " + std::to_string(cmd.omega) +
                          " Hz outside [0, " + std::to_string(p.omega_max) + "]");
  }
  if (!std::isfinite(cmd.theta)) throw CommandRejected("heading is not finite");
}

double calibrated_speed(double omega, const SimParams& p) {
  validate_command({omega, 0.0}, p);
  return p.k_v * omega;
}

Vec2 apply_actuation_noise(const ActuationCommand& cmd, const SimParams& p, RngStream& rng) {
  const double factor = rng.uniform(1.0 - p.noise_speed_frac, 1.0 + p.noise_speed_frac);
  const double offset = rng.uniform(-p.noise_heading, p.noise_heading);
  const double speed_px = p.k_v * cmd.omega * factor / p.um_per_px;
  return Vec2::from_angle(cmd.theta + offset) * speed_px;
}

Vec2 wall_force(const Body& b, const SimParams& p) {
  Vec2 f;
  const double r = b.radius;
  if (b.position.x < r) f.x += p.wall_stiffness * (r - b.position.x);
  if (b.position.x > p.width - r) f.x -= p.wall_stiffness * (b.position.x - (p.width - r));
  if (b.position.y < r) f.y += p.wall_stiffness * (r - b.position.y);
  if (b.position.y > p.height - r) f.y -= p.wall_stiffness * (b.position.y - (p.height - r));
  return f;
}

HertzContact hertz_normal(Vec2 p_i, Vec2 p_j, double r_i, double r_j, double k_h) {
  const Vec2 d = p_j - p_i;
  const double dist = d.norm();
  if (!(dist > 0.0)) throw DegenerateContact("coincident body centers");
  HertzContact c;
  c.normal = d / dist;
  c.overlap = (r_i + r_j) - dist;
  if (c.overlap > 0.0) c.magnitude = k_h * c.overlap * std::sqrt(c.overlap);
  return c;
}

FrictionResult friction_correction(Vec2 v_rel, Vec2 n, double f_n, double g_i, double g_j,
                                   double mu, double dt) {
  FrictionResult r;
  r.budget = mu * f_n * (g_i + g_j) * dt;
  const Vec2 v_t = v_rel - n * v_rel.dot(n);
  const double speed = v_t.norm();
  if (speed == 0.0) {
    r.stick = true;
    return r;
  }
  // Relative change applied to v_rel, then shared so that i takes g_i/(g_i+g_j).
  Vec2 change;
  if (speed <= r.budget) {
    r.stick = true;
    change = -v_t;
    r.applied = speed;
  } else {
    change = v_t * (-r.budget / speed);
    r.applied = r.budget;
  }
  const double wi = g_i / (g_i + g_j);
  r.dv_i = change * wi;
  r.dv_j = change * (wi - 1.0);
  return r;
}

double near_field_threshold(double hdot, const SimParams& p) {
  const double h = p.suction_base + p.suction_slope * std::max(0.0, hdot);
  return std::clamp(h, p.suction_base, p.suction_cap);
}

double near_field_damping(double h, double hdot, const SimParams& p) {
  if (hdot > 0.0 && h > 0.0 && h <= near_field_threshold(hdot, p)) {
    return (1.0 - p.suction_reduction) * hdot;
  }
  return hdot;
}

double guard_band_clamp(double h, double v_n, double guard_gap) {
  if (h > 0.0 && h <= guard_gap && v_n > 0.0) return 0.0;
  return v_n;
}

Vec2 flow_velocity(double y, const SimParams& p) {
  if (!p.flow_enabled) return {};
  y = std::clamp(y, 0.0, p.height);
  const double xi = 2.0 * (y / p.height) - 1.0;
  return {p.flow_peak_um_s * (1.0 - xi * xi) / p.um_per_px, 0.0};
}

}  // namespace micropush::sim
