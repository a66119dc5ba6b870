#include "micropush/control/params.hpp"

#include <string>

#include "micropush/core/error.hpp"

namespace micropush::control {

ControlParams ControlParams::from_sim(const sim::SimParams& p) {
  ControlParams c;
  c.speed_limit = p.max_speed_px();
  c.rate_limit = 0.8 * c.speed_limit;
  return c;
}

void ControlParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("control parameter violates ") + what);
  };
  require(speed_limit > 0.0, "speed_limit > 0");
  require(rate_limit > 0.0, "rate_limit > 0");
  require(pre_contact_clearance >= 0.0, "d_0 >= 0");
  require(contact_tolerance > 0.0, "contact_tolerance > 0");
  require(keep_factor > 0.0 && keep_factor < 1.0, "0 < keep_factor < 1");
  require(transition_steps >= 1, "transition_steps >= 1");
  require(alignment_threshold > 0.0, "alignment_threshold > 0");
  require(revert_steps >= 0, "revert_steps >= 0");
  require(mpc.horizon >= 1, "horizon >= 1");
  require(mpc.q_pos >= 0.0 && mpc.r_ctl >= 0.0 && mpc.s_smooth >= 0.0 && mpc.qf_scale >= 0.0,
          "non-negative MPC weights");
  require(pid.derivative_filter > 0.0 && pid.derivative_filter <= 1.0, "0 < alpha_d <= 1");
  require(pid.integral_clamp > 0.0, "integral_clamp > 0");
}

}  // namespace micropush::control
