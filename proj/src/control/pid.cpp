#include "micropush/control/pid.hpp"

#include <algorithm>

namespace micropush::control {

Vec2 pid_update(Vec2 e, PidState& s, double dt, const PidParams& p) {
  if (!s.seeded) {
    s.e_prev = e;
    s.de_filtered = {};
    s.seeded = true;
  }
  s.integral += e * dt;
  s.integral.x = std::clamp(s.integral.x, -p.integral_clamp, p.integral_clamp);
  s.integral.y = std::clamp(s.integral.y, -p.integral_clamp, p.integral_clamp);
  const Vec2 raw = (e - s.e_prev) / dt;
  s.de_filtered = s.de_filtered * (1.0 - p.derivative_filter) + raw * p.derivative_filter;
  s.e_prev = e;
  return e * p.k_p + s.integral * p.k_i + s.de_filtered * p.k_d;
}

}  // namespace micropush::control
