#include "micropush/control/reference.hpp"

#include <algorithm>

#include "micropush/core/error.hpp"

namespace micropush::control {

std::string phase_name(Phase p) {
  switch (p) {
    case Phase::Approach: return "approach";
    case Phase::Transition: return "transition";
    case Phase::Push: return "push";
  }
  return "?";
}

ReferenceGeometry reference_geometry(Vec2 robot, Vec2 cell, Vec2 goal, double r_robot,
                                     double r_cell, const ControlParams& params) {
  const Vec2 d = goal - cell;
  const double len = d.norm();
  if (!(len > 0.0)) throw ReferenceError("goal coincides with the pushed cell");
  ReferenceGeometry g;
  g.push_dir = d / len;
  g.p_pre = cell - g.push_dir * (r_robot + r_cell + params.pre_contact_clearance);
  g.p_push = cell - g.push_dir * (r_robot + params.keep_factor * r_cell);
  const Vec2 bearing = cell - robot;
  g.contact = bearing.norm() <= r_robot + r_cell + params.contact_tolerance;
  g.alignment = bearing.norm2() > 0.0 ? angle_between(bearing, g.push_dir) : 0.0;
  return g;
}

Vec2 reference_point(Vec2 robot, Vec2 cell, Vec2 goal, double r_robot, double r_cell,
                     ReferenceState& st, const ControlParams& params) {
  const ReferenceGeometry g = reference_geometry(robot, cell, goal, r_robot, r_cell, params);

  if (st.direction_mode && st.last_push_dir.norm2() > 0.0 &&
      angle_between(st.last_push_dir, g.push_dir) > params.direction_change_threshold) {
    st.revert_timer = params.revert_steps;
    st.phase = Phase::Approach;
    st.transition_progress = 0.0;
  }
  st.last_push_dir = g.push_dir;

  if (st.revert_timer > 0) {
    --st.revert_timer;
    return g.p_pre;
  }

  const double gap = distance(robot, cell) - (r_robot + r_cell);
  if (st.phase != Phase::Approach) {
    const bool separated = gap > params.pre_contact_clearance + params.contact_tolerance;
    if (separated || g.alignment > params.realign_threshold) {
      st.phase = Phase::Approach;
      st.transition_progress = 0.0;
    }
  }
  if (st.phase == Phase::Approach) {
    const bool arrived = distance(robot, g.p_pre) <= params.contact_tolerance;
    if ((g.contact || arrived) && g.alignment <= params.alignment_threshold) {
      st.phase = Phase::Transition;
      st.transition_progress = 0.0;
    } else {
      return g.p_pre;
    }
  }
  if (st.phase == Phase::Transition) {
    st.transition_progress += 1.0 / params.transition_steps;
    // repeated 1/N sums fall just short of 1
    if (st.transition_progress >= 1.0 - 1e-9) {
      st.transition_progress = 1.0;
      st.phase = Phase::Push;
    }
    const Vec2 p = lerp(g.p_pre, g.p_push, st.transition_progress);
    return p;
  }
  return g.p_push;
}

}  // namespace micropush::control
