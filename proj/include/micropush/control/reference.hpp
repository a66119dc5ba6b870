#pragma once

#include <string>

#include "micropush/control/params.hpp"
#include "micropush/core/vec2.hpp"

namespace micropush::control {

enum class Phase { Approach, Transition, Push };
std::string phase_name(Phase p);

struct ReferenceState {
  Phase phase = Phase::Approach;
  double transition_progress = 0.0;  ///< in [0, 1]
  Vec2 last_push_dir;                ///< zero until the first call
  bool direction_mode = false;       ///< user-set pushing direction
  int revert_timer = 0;              ///< steps left at the pre-contact point
};

struct ReferenceGeometry {
  Vec2 push_dir;  ///< t
  Vec2 p_pre;
  Vec2 p_push;
  bool contact = false;
  double alignment = 0.0;  ///< angle between the robot-to-cell bearing and t [rad]
};

/// p_pre = c - (r_r + r_c + d_0) t, p_push = c - (r_r + beta_keep r_c) t,
/// contact iff |c - p_r| <= r_r + r_c + delta_c. Throws ReferenceError when g == c.
ReferenceGeometry reference_geometry(Vec2 robot, Vec2 cell, Vec2 goal, double r_robot,
                                     double r_cell, const ControlParams& params);

/// Advances the phase machine by one control step and returns p_ref.
/// Approach: p_ref = p_pre; entering Transition needs contact or arrival at
/// p_pre (within delta_c), plus the bearing to the cell within the alignment
/// threshold of t. Transition interpolates p_pre -> p_push linearly over
/// transition_steps. Push tracks p_push. Transition and Push fall back to
/// Approach when the robot separates beyond d_0 + delta_c or the bearing
/// drifts past realign_threshold. In direction mode, a change of t above
/// direction_change_threshold holds p_pre for revert_steps steps.
Vec2 reference_point(Vec2 robot, Vec2 cell, Vec2 goal, double r_robot, double r_cell,
                     ReferenceState& state, const ControlParams& params);

}  // namespace micropush::control
