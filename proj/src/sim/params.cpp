#include "micropush/sim/params.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "micropush/core/error.hpp"
#include "micropush/core/keyvalue.hpp"

namespace micropush::sim {

namespace {

using Setter = std::function<void(SimParams&, const KeyValue&)>;
using Getter = std::function<std::string(const SimParams&)>;

struct Field {
  Setter set;
  Getter get;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

#define MP_DOUBLE(name) \
  {#name, {[](SimParams& p, const KeyValue& kv) { p.name = parse_double(kv); }, \
           [](const SimParams& p) { return fmt(p.name); }}}
#define MP_INT(name) \
  {#name, {[](SimParams& p, const KeyValue& kv) { p.name = parse_int(kv); }, \
           [](const SimParams& p) { return std::to_string(p.name); }}}
#define MP_BOOL(name) \
  {#name, {[](SimParams& p, const KeyValue& kv) { p.name = parse_bool(kv); }, \
           [](const SimParams& p) { return std::string(p.name ? "true" : "false"); }}}

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> f = {
      MP_DOUBLE(dt),
      MP_DOUBLE(um_per_px),
      MP_DOUBLE(k_v),
      MP_DOUBLE(omega_max),
      MP_DOUBLE(noise_speed_frac),
      MP_DOUBLE(noise_heading),
      MP_DOUBLE(drag_inverse_robot),
      MP_DOUBLE(drag_inverse_cell),
      MP_DOUBLE(wall_stiffness),
      MP_DOUBLE(hertz_stiffness),
      MP_DOUBLE(friction_coeff),
      MP_DOUBLE(suction_reduction),
      MP_DOUBLE(suction_base),
      MP_DOUBLE(suction_slope),
      MP_DOUBLE(suction_cap),
      MP_DOUBLE(guard_gap),
      MP_DOUBLE(normal_approach_cap),
      MP_BOOL(near_field_all_pairs),
      MP_BOOL(flow_enabled),
      MP_DOUBLE(flow_peak_um_s),
      MP_DOUBLE(width),
      MP_DOUBLE(height),
      MP_DOUBLE(overlap_tolerance),
      MP_INT(projection_max_sweeps),
  };
  return f;
}

#undef MP_DOUBLE
#undef MP_INT
#undef MP_BOOL

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(std::string("invalid SimParams: ") + what);
}

}  // namespace

void SimParams::validate() const {
  require(dt > 0.0, "dt > 0");
  require(um_per_px > 0.0, "um_per_px > 0");
  require(k_v > 0.0, "k_v > 0");
  require(omega_max > 0.0, "omega_max > 0");
  require(noise_speed_frac >= 0.0 && noise_speed_frac < 1.0, "0 <= noise_speed_frac < 1");
  require(noise_heading >= 0.0, "noise_heading >= 0");
  require(drag_inverse_robot > 0.0 && drag_inverse_cell > 0.0, "drag inverses > 0");
  require(wall_stiffness >= 0.0 && hertz_stiffness >= 0.0, "stiffnesses >= 0");
  require(friction_coeff >= 0.0, "friction_coeff >= 0");
  require(suction_reduction > 0.0 && suction_reduction < 1.0, "0 < suction_reduction < 1");
  require(suction_base >= 0.0 && suction_base <= suction_cap, "0 <= suction_base <= suction_cap");
  require(suction_slope >= 0.0, "suction_slope >= 0");
  require(guard_gap >= 0.0, "guard_gap >= 0");
  require(normal_approach_cap > 0.0, "normal_approach_cap > 0");
  require(flow_peak_um_s >= 0.0, "flow_peak_um_s >= 0");
  require(width > 0.0 && height > 0.0, "positive workspace");
  require(overlap_tolerance > 0.0, "overlap_tolerance > 0");
  require(projection_max_sweeps >= 1, "projection_max_sweeps >= 1");
}

bool set_param(SimParams& p, const std::string& key, const std::string& value) {
  const auto it = fields().find(key);
  if (it == fields().end()) return false;
  it->second.set(p, KeyValue{key, value, 0});
  return true;
}

SimParams parse_params(const std::string& text, SimParams base) {
  for (const KeyValue& kv : parse_key_values(text)) {
    const auto it = fields().find(kv.key);
    if (it == fields().end())
      throw ConfigError("line " + std::to_string(kv.line) + ": unknown parameter '" + kv.key + "'");
    it->second.set(base, kv);
  }
  base.validate();
  return base;
}

SimParams load_params_file(const std::string& path, SimParams base) {
  return parse_params(read_text_file(path), base);
}

std::string format_params(const SimParams& p) {
  std::ostringstream out;
  for (const auto& [name, field] : fields()) out << name << " = " << field.get(p) << '\n';
  return out.str();
}

}  // namespace micropush::sim
