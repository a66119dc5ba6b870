#pragma once

#include "micropush/sim/params.hpp"

namespace micropush::control {

struct MpcParams {
  int horizon = 10;
  double q_pos = 3.0;
  double r_ctl = 0.12;
  double s_smooth = 0.05;
  double qf_scale = 6.0;
};

struct PidParams {
  double k_p = 4.0;
  double k_i = 0.0;
  double k_d = 0.8;
  double derivative_filter = 0.4;  ///< alpha_d
  double integral_clamp = 50.0;    ///< bound on each component of the error integral [px s]
};

/// Controller hyperparameters. Mechanism constants without published values
/// (keep factor, contact tolerance, transition schedule, alignment test,
/// revert timer, near-zero threshold, integral clamp) are repository defaults.
struct ControlParams {
  double pre_contact_clearance = 0.8;  ///< d_0 [px]
  double contact_tolerance = 0.3;      ///< delta_c [px]
  double keep_factor = 0.25;           ///< beta_keep
  double speed_limit = 57.5;           ///< v_max [px/s]
  double rate_limit = 0.8 * 57.5;      ///< largest change of u per control step [px/s]
  int transition_steps = 10;
  double alignment_threshold = 0.35;   ///< [rad]
  double realign_threshold = 0.7;      ///< misalignment that drops a push back to approach [rad]
  double direction_change_threshold = 0.7853981633974483;  ///< pi/4 [rad]
  int revert_steps = 15;
  double near_zero_speed = 1e-6;       ///< [px/s]
  MpcParams mpc;
  PidParams pid;

  /// Speed and rate limits derived from the actuation calibration.
  static ControlParams from_sim(const sim::SimParams& p);
  void validate() const;
};

}  // namespace micropush::control
