#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "micropush/core/error.hpp"

namespace micropush::session {

inline constexpr int kProtocolVersion = 1;

/// Wire tags. Replay is the dump-loading request; the rest mirror the
/// session operations.
enum class Tag {
  Reset,
  Step,
  SetMode,
  PlanPreview,
  StartAuto,
  Pause,
  Replay,
  Observation,
  Diagnostics,
  Error,
  Ack
};

std::string tag_name(Tag t);
std::optional<Tag> parse_tag(std::string_view s);
/// Tags a client may send.
bool is_request(Tag t);

/// One framed text message: {"v": 1, "seq": n, "tag": "...", "payload": {...}}.
struct Message {
  std::int64_t seq = 0;
  Tag tag = Tag::Ack;
  nlohmann::json payload = nlohmann::json::object();

  bool operator==(const Message& o) const {
    return seq == o.seq && tag == o.tag && payload == o.payload;
  }
};

/// A message that does not follow the envelope schema.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

nlohmann::json to_json(const Message& m);
std::string serialize(const Message& m);
/// Throws ProtocolError: bad JSON, wrong version, unknown tag, missing or
/// mistyped envelope fields. The payload defaults to {} when absent.
Message message_from_json(const nlohmann::json& j);
Message deserialize(std::string_view text);

}  // namespace micropush::session
