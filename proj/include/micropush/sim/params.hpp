#pragma once

#include <string>

namespace micropush::sim {

/// Every physical and numerical constant of the simulator in one record.
///
/// Calibration and benchmark values (dt, scale, k_v, omega_max, noise, flow,
/// workspace) follow the published defaults. The contact and damping constants
/// are not published anywhere; they are repository defaults, picked so that a
/// 30 Hz push moves a same-size cell without tunneling at dt = 0.05 s.
struct SimParams {
  double dt = 0.05;                 ///< integration step [s]
  double um_per_px = 1.2;           ///< 240 um over 200 px
  double k_v = 2.3;                 ///< free-space speed per drive frequency [um/s/Hz]
  double omega_max = 30.0;          ///< highest admissible drive frequency [Hz]
  double noise_speed_frac = 0.02;   ///< speed factor drawn from [1 - e, 1 + e]
  double noise_heading = 0.02;      ///< heading offset drawn from [-e, e] [rad]

  // Repository defaults, not published values.
  double drag_inverse_robot = 0.02; ///< [px/s per force unit]
  double drag_inverse_cell = 0.02;  ///< [px/s per force unit]
  double wall_stiffness = 200.0;    ///< [force units / px]
  double hertz_stiffness = 50.0;    ///< [force units / px^1.5]
  double friction_coeff = 0.3;
  double suction_reduction = 0.5;   ///< fraction of the separation rate removed near contact
  double suction_base = 0.5;        ///< near-field threshold at rest [px]
  double suction_slope = 0.05;      ///< threshold growth per unit separation speed [s]
  double suction_cap = 2.0;         ///< largest near-field threshold [px]
  double guard_gap = 0.05;          ///< gap below which closing motion is zeroed [px]
  double normal_approach_cap = 0.5 * (2.0 * 5.0 / 1.2) / 0.05 * 0.1;  ///< [px/s]
  bool near_field_all_pairs = true; ///< false: robot-cell pairs only

  bool flow_enabled = false;
  double flow_peak_um_s = 5.0;      ///< Poiseuille centerline speed [um/s]

  double width = 200.0;             ///< workspace W [px]
  double height = 140.0;            ///< workspace H [px]

  double overlap_tolerance = 1e-6;  ///< residual overlap allowed after projection [px]
  int projection_max_sweeps = 64;  ///< upper bound; stops early once no pair overlaps beyond tolerance

  /// Largest robot speed the calibration admits [px/s].
  double max_speed_px() const { return k_v * omega_max / um_per_px; }

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

/// Reads a `key = value` parameter file (one per line, `#` comments).
/// Unknown keys and malformed values are rejected with ConfigError.
SimParams load_params_file(const std::string& path, SimParams base = {});
/// Same as load_params_file on an in-memory text.
SimParams parse_params(const std::string& text, SimParams base = {});
/// Writes every field in the parameter-file format.
std::string format_params(const SimParams& p);

/// Applies one `key = value` assignment. Returns false for an unknown key.
bool set_param(SimParams& p, const std::string& key, const std::string& value);

}  // namespace micropush::sim
