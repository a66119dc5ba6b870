#pragma once

#include <json.hpp>

#include "micropush/sim/world.hpp"

namespace micropush::sim {

/// {"robot": {...}, "cells": [...], "t": s, "step": n}. Each body carries
/// id, radius, position and velocity in px and in um.
nlohmann::json observation_to_json(const Observation& obs);
Observation observation_from_json(const nlohmann::json& j);

nlohmann::json command_to_json(const ActuationCommand& cmd);

}  // namespace micropush::sim
