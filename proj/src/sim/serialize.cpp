#include "micropush/sim/serialize.hpp"

namespace micropush::sim {

namespace {

using nlohmann::json;

json vec(Vec2 v) { return json::array({v.x, v.y}); }

Vec2 vec_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json body_json(const BodyObservation& b) {
  return {{"id", b.id},
          {"radius_px", b.radius_px},
          {"radius_um", b.radius_um},
          {"position_px", vec(b.position_px)},
          {"velocity_px", vec(b.velocity_px)},
          {"position_um", vec(b.position_um)},
          {"velocity_um", vec(b.velocity_um)}};
}

BodyObservation body_from(const json& j) {
  BodyObservation b;
  b.id = j.at("id").get<int>();
  b.radius_px = j.at("radius_px").get<double>();
  b.radius_um = j.at("radius_um").get<double>();
  b.position_px = vec_from(j.at("position_px"));
  b.velocity_px = vec_from(j.at("velocity_px"));
  b.position_um = vec_from(j.at("position_um"));
  b.velocity_um = vec_from(j.at("velocity_um"));
  return b;
}

}  // namespace

nlohmann::json observation_to_json(const Observation& obs) {
  json cells = json::array();
  for (const auto& c : obs.cells) cells.push_back(body_json(c));
  return {{"robot", body_json(obs.robot)}, {"cells", std::move(cells)}, {"t", obs.t},
          {"step", obs.step}};
}

Observation observation_from_json(const nlohmann::json& j) {
  Observation obs;
  obs.robot = body_from(j.at("robot"));
  for (const auto& c : j.at("cells")) obs.cells.push_back(body_from(c));
  obs.t = j.at("t").get<double>();
  obs.step = j.at("step").get<std::int64_t>();
  return obs;
}

nlohmann::json command_to_json(const ActuationCommand& cmd) {
  return {{"omega", cmd.omega}, {"theta", cmd.theta}};
}

}  // namespace micropush::sim
