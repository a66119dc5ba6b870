#include "micropush/control/controller.hpp"

#include <algorithm>
#include <cmath>

#include "micropush/core/error.hpp"

namespace micropush::control {

std::string law_name(ControlLaw law) { return law == ControlLaw::MPC ? "MPC" : "PID"; }

ControlLaw parse_law(const std::string& s) {
  if (s == "MPC" || s == "mpc") return ControlLaw::MPC;
  if (s == "PID" || s == "pid") return ControlLaw::PID;
  throw ConfigError("unknown controller '" + s + "'");
}

Vec2 limit_command(Vec2 u, Vec2 u_prev, const ControlParams& p) {
  const double speed = u.norm();
  if (speed > p.speed_limit) u = u * (p.speed_limit / speed);
  const Vec2 du = u - u_prev;
  const double step = du.norm();
  if (step > p.rate_limit) u = u_prev + du * (p.rate_limit / step);
  return u;
}

sim::ActuationCommand to_actuation(Vec2 u, double prev_theta, const sim::SimParams& sim,
                                   double near_zero) {
  const double speed = u.norm();
  if (!(speed >= near_zero)) return {0.0, wrap_angle(prev_theta)};
  const double omega = std::clamp(speed * sim.um_per_px / sim.k_v, 0.0, sim.omega_max);
  return {omega, wrap_angle(u.angle())};
}

ControllerOutput control_step(Vec2 robot, double r_robot, Vec2 cell, double r_cell, Vec2 goal,
                              ControlLaw law, ControllerState& st, const ControlParams& params,
                              const sim::SimParams& sim) {
  ControllerOutput out;
  const Vec2 p_ref = reference_point(robot, cell, goal, r_robot, r_cell, st.ref, params);
  const Vec2 e = p_ref - robot;
  Vec2 u;
  if (law == ControlLaw::MPC) {
    const MpcSolution sol = mpc_solve(robot, p_ref, st.u_prev, sim.dt, params.mpc);
    out.diag.solver_ok = sol.ok;
    u = sol.first();
  } else {
    u = pid_update(e, st.pid, sim.dt, params.pid);
  }
  u = limit_command(u, st.u_prev, params);
  out.u = u;
  out.actuation = to_actuation(u, st.theta_prev, sim, params.near_zero_speed);
  st.u_prev = u;
  st.theta_prev = out.actuation.theta;
  out.diag.phase = st.ref.phase;
  out.diag.p_ref = p_ref;
  out.diag.error = e;
  out.diag.omega = out.actuation.omega;
  return out;
}

nlohmann::json diagnostics_to_json(const Diagnostics& d) {
  return {{"phase", phase_name(d.phase)},
          {"p_ref", {d.p_ref.x, d.p_ref.y}},
          {"e", {d.error.x, d.error.y}},
          {"omega", d.omega},
          {"solver_ok", d.solver_ok}};
}

}  // namespace micropush::control
