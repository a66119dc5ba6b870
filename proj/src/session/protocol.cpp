#include "micropush/session/protocol.hpp"

#include <array>
#include <utility>

namespace micropush::session {

namespace {

constexpr std::array<std::pair<Tag, const char*>, 11> kTags{{
    {Tag::Reset, "Reset"},
    {Tag::Step, "Step"},
    {Tag::SetMode, "SetMode"},
    {Tag::PlanPreview, "PlanPreview"},
    {Tag::StartAuto, "StartAuto"},
    {Tag::Pause, "Pause"},
    {Tag::Replay, "Replay"},
    {Tag::Observation, "Observation"},
    {Tag::Diagnostics, "Diagnostics"},
    {Tag::Error, "Error"},
    {Tag::Ack, "Ack"},
}};

}  // namespace

std::string tag_name(Tag t) {
  for (const auto& [tag, name] : kTags) {
    if (tag == t) return name;
  }
  return "?";
}

std::optional<Tag> parse_tag(std::string_view s) {
  for (const auto& [tag, name] : kTags) {
    if (s == name) return tag;
  }
  return std::nullopt;
}

bool is_request(Tag t) {
  switch (t) {
    case Tag::Observation:
    case Tag::Diagnostics:
    case Tag::Error:
    case Tag::Ack:
      return false;
    default:
      return true;
  }
}

nlohmann::json to_json(const Message& m) {
  return {{"v", kProtocolVersion}, {"seq", m.seq}, {"tag", tag_name(m.tag)}, {"payload", m.payload}};
}

std::string serialize(const Message& m) { return to_json(m).dump(); }

Message message_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ProtocolError("message must be a JSON object");
  if (!j.contains("v") || !j["v"].is_number_integer()) throw ProtocolError("missing protocol version 'v'");
  if (j["v"].get<int>() != kProtocolVersion) {
    throw ProtocolError("unsupported protocol version " + j["v"].dump());
  }
  if (!j.contains("seq") || !j["seq"].is_number_integer()) throw ProtocolError("missing integer 'seq'");
  if (!j.contains("tag") || !j["tag"].is_string()) throw ProtocolError("missing string 'tag'");
  Message m;
  m.seq = j["seq"].get<std::int64_t>();
  const auto tag = parse_tag(j["tag"].get<std::string>());
  if (!tag) throw ProtocolError("unknown tag '" + j["tag"].get<std::string>() + "'");
  m.tag = *tag;
  if (j.contains("payload")) {
    if (!j["payload"].is_object()) throw ProtocolError("'payload' must be an object");
    m.payload = j["payload"];
  }
  return m;
}

Message deserialize(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProtocolError(std::string("invalid JSON: ") + e.what());
  }
  return message_from_json(j);
}

}  // namespace micropush::session
