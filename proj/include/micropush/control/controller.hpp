#pragma once

#include <string>

#include <json.hpp>

#include "micropush/control/mpc.hpp"
#include "micropush/control/params.hpp"
#include "micropush/control/pid.hpp"
#include "micropush/control/reference.hpp"
#include "micropush/sim/params.hpp"
#include "micropush/sim/world.hpp"

namespace micropush::control {

enum class ControlLaw { MPC, PID };
std::string law_name(ControlLaw law);  ///< "MPC" / "PID"
ControlLaw parse_law(const std::string& s);

/// Clip |u| to v_max (radially), then |u - u_prev| to the rate limit.
Vec2 limit_command(Vec2 u, Vec2 u_prev, const ControlParams& p);

/// theta = atan2(u), held at prev_theta below the near-zero speed;
/// omega = |u| s / k_v clipped to [0, omega_max].
sim::ActuationCommand to_actuation(Vec2 u, double prev_theta, const sim::SimParams& sim,
                                   double near_zero = 1e-6);

struct Diagnostics {
  Phase phase = Phase::Approach;
  Vec2 p_ref;
  Vec2 error;
  double omega = 0.0;
  bool solver_ok = true;
};

struct ControllerOutput {
  Vec2 u;
  sim::ActuationCommand actuation;
  Diagnostics diag;
};

struct ControllerState {
  ReferenceState ref;
  PidState pid;
  Vec2 u_prev;
  double theta_prev = 0.0;

  void reset_law() { pid = {}; }
};

/// reference_point -> MPC or PID on e = p_ref - x -> limit_command -> to_actuation.
ControllerOutput control_step(Vec2 robot, double r_robot, Vec2 cell, double r_cell, Vec2 goal,
                              ControlLaw law, ControllerState& state, const ControlParams& params,
                              const sim::SimParams& sim);

nlohmann::json diagnostics_to_json(const Diagnostics& d);

}  // namespace micropush::control
