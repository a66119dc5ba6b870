#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "micropush/bench/config.hpp"
#include "micropush/bench/episode.hpp"
#include "micropush/bench/scenario.hpp"
#include "micropush/control/controller.hpp"
#include "micropush/planning/polyline.hpp"
#include "micropush/session/protocol.hpp"

namespace micropush::session {

enum class Mode { ManualDirection, AutoTransport, AutoAssembly, Paused };
std::string mode_name(Mode m);
std::optional<Mode> parse_mode(std::string_view s);

/// A bench-runner trajectory dump split into its header and frame lines.
struct TrajectoryDump {
  nlohmann::json header;
  std::vector<nlohmann::json> frames;
};
/// Throws ProtocolError on a malformed dump.
TrajectoryDump parse_dump(std::string_view jsonl);

/// One client's simulation. Not thread-safe: the owner calls handle() and
/// tick() from one logical thread, so messages land between steps.
///
/// ManualDirection advances one step per Step request. Without a selected
/// cell, Step is the raw actuation (omega, theta). With a cell selected
/// through SetMode, theta is the desired pushing direction of that cell,
/// the chosen control law produces the actuation and omega caps its
/// frequency. The Auto modes advance one staged-runner step per tick.
class Session {
 public:
  explicit Session(bench::EpisodeConfig base = {});

  /// Exactly one Ack or Error, followed by any Observation frames.
  std::vector<Message> handle(const Message& in);
  /// Same, for raw text; envelope errors become an Error reply.
  std::vector<Message> handle_text(std::string_view text);
  /// One step of the active auto run: Observation then Diagnostics.
  /// Empty when paused or in ManualDirection.
  std::vector<Message> tick();

  Mode mode() const { return mode_; }
  const sim::World& world() const;
  const bench::EpisodeConfig& config() const { return cfg_; }
  /// Payload of the Observation frame for the current state.
  nlohmann::json observation_payload() const;

 private:
  bench::EpisodeConfig cfg_;
  bench::Scenario scene_;
  std::optional<bench::EpisodeRunner> runner_;
  Mode mode_ = Mode::ManualDirection;
  Mode resume_mode_ = Mode::ManualDirection;
  std::int64_t out_seq_ = 0;
  std::optional<std::int64_t> last_in_seq_;

  // Manual direction control.
  int direction_cell_ = -1;
  control::ControllerState ctrl_;
  control::Diagnostics diag_;
  sim::ActuationCommand last_cmd_;
  bool halted_ = false;  ///< a module error stopped the simulation
  std::string halt_reason_;

  Message make(Tag tag, nlohmann::json payload);
  Message ack(const Message& in, nlohmann::json extra = nlohmann::json::object());
  Message error(std::optional<std::int64_t> re, const std::string& reason);
  Message observation();
  Message diagnostics();
  nlohmann::json diagnostics_payload() const;
  sim::World& mutable_world();
  void leave_auto();

  std::vector<Message> on_reset(const Message& in);
  std::vector<Message> on_step(const Message& in);
  std::vector<Message> on_set_mode(const Message& in);
  std::vector<Message> on_plan_preview(const Message& in);
  std::vector<Message> on_start_auto(const Message& in);
  std::vector<Message> on_pause(const Message& in);
  std::vector<Message> on_replay(const Message& in);
};

}  // namespace micropush::session
