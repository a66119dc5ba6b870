#pragma once

#include "micropush/control/params.hpp"
#include "micropush/core/vec2.hpp"

namespace micropush::control {

struct PidState {
  Vec2 integral;
  Vec2 e_prev;
  Vec2 de_filtered;
  bool seeded = false;  ///< first update sets e_prev = e, so the derivative starts at 0
};

/// u = K_p e + K_i int(e) + K_d de_f, de_f = (1 - a) de_f + a (e - e_prev) / dt,
/// each integral component clamped to +-integral_clamp.
Vec2 pid_update(Vec2 e, PidState& state, double dt, const PidParams& p);

}  // namespace micropush::control
