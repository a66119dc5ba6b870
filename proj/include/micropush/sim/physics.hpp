#pragma once

// The individual laws of the step pipeline, as pure functions so each can be
// checked in isolation. World::step composes them.

#include "micropush/core/rng.hpp"
#include "micropush/core/vec2.hpp"
#include "micropush/sim/params.hpp"
#include "micropush/sim/world.hpp"

namespace micropush::sim {

/// Free-space rolling speed k_v * omega [um/s]. Rejects omega outside [0, omega_max].
double calibrated_speed(double omega, const SimParams& p);

/// Throws CommandRejected unless 0 <= omega <= omega_max and theta is finite.
void validate_command(const ActuationCommand& cmd, const SimParams& p);

/// Robot drive velocity [px/s] with bounded uniform noise on speed and heading.
/// Always consumes exactly two draws from `rng`.
Vec2 apply_actuation_noise(const ActuationCommand& cmd, const SimParams& p, RngStream& rng);

/// Penalty force pushing a body back inside [0, W] x [0, H].
Vec2 wall_force(const Body& body, const SimParams& p);

struct HertzContact {
  double magnitude = 0.0;  ///< k_h * overlap^1.5, zero without overlap
  double overlap = 0.0;    ///< (r_i + r_j) - d_ij
  Vec2 normal;             ///< unit vector from i to j
};

/// Hertz-type normal law. Throws DegenerateContact when the centers coincide.
HertzContact hertz_normal(Vec2 p_i, Vec2 p_j, double r_i, double r_j, double k_h);

struct FrictionResult {
  Vec2 dv_i, dv_j;       ///< velocity adjustments for the two bodies
  double budget = 0.0;   ///< mu * F_n * (g_i + g_j) * dt
  double applied = 0.0;  ///< magnitude of the tangential relative change
  bool stick = false;
};

/// Velocity-level stick-slip. v_rel = v_i - v_j, n from i to j. The tangential
/// relative velocity is cancelled when within budget, otherwise reduced by the
/// budget. The change is shared in proportion to the drag inverses.
FrictionResult friction_correction(Vec2 v_rel, Vec2 n, double f_n, double g_i, double g_j,
                                   double mu, double dt);

/// Near-field threshold clip(h0 + alpha * max(0, hdot), h0, h_max).
double near_field_threshold(double hdot, const SimParams& p);

/// Damped separation rate: (1 - beta) * hdot when 0 < h <= threshold and hdot > 0.
double near_field_damping(double h, double hdot, const SimParams& p);

/// Normal relative velocity after the guard band: v_n > 0 means closing.
/// Zeroed when 0 < h <= guard_gap and closing.
double guard_band_clamp(double h, double v_n, double guard_gap);

/// Poiseuille drift along +x at height y [px/s]. Zero when flow is disabled.
Vec2 flow_velocity(double y, const SimParams& p);

}  // namespace micropush::sim
