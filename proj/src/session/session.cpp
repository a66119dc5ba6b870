#include "micropush/session/session.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "micropush/planning/planner.hpp"
#include "micropush/sim/serialize.hpp"

namespace micropush::session {

using nlohmann::json;

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::ManualDirection: return "ManualDirection";
    case Mode::AutoTransport: return "AutoTransport";
    case Mode::AutoAssembly: return "AutoAssembly";
    case Mode::Paused: return "Paused";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view s) {
  for (Mode m : {Mode::ManualDirection, Mode::AutoTransport, Mode::AutoAssembly, Mode::Paused}) {
    if (s == mode_name(m)) return m;
  }
  return std::nullopt;
}

TrajectoryDump parse_dump(std::string_view jsonl) {
  TrajectoryDump d;
  std::istringstream in{std::string(jsonl)};
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      throw ProtocolError("dump line " + std::to_string(n) + ": invalid JSON");
    }
    const std::string type = j.is_object() ? j.value("type", "") : "";
    if (d.header.is_null()) {
      if (type != "header") throw ProtocolError("dump must start with a header line");
      d.header = std::move(j);
      continue;
    }
    if (type != "frame") throw ProtocolError("dump line " + std::to_string(n) + ": expected a frame");
    for (const char* key : {"robot", "cells", "t", "step"}) {
      if (!j.contains(key)) {
        throw ProtocolError("dump line " + std::to_string(n) + ": frame lacks '" + key + "'");
      }
    }
    d.frames.push_back(std::move(j));
  }
  if (d.header.is_null()) throw ProtocolError("empty dump");
  return d;
}

namespace {

bool is_auto(Mode m) { return m == Mode::AutoTransport || m == Mode::AutoAssembly; }

double number(const json& p, const char* key, std::optional<double> fallback = std::nullopt) {
  if (!p.contains(key)) {
    if (fallback) return *fallback;
    throw ProtocolError(std::string("missing number '") + key + "'");
  }
  if (!p[key].is_number()) throw ProtocolError(std::string("'") + key + "' must be a number");
  return p[key].get<double>();
}

std::int64_t integer(const json& p, const char* key, std::int64_t fallback) {
  if (!p.contains(key)) return fallback;
  if (!p[key].is_number_integer()) throw ProtocolError(std::string("'") + key + "' must be an integer");
  return p[key].get<std::int64_t>();
}

std::string text(const json& p, const char* key, const std::string& fallback) {
  if (!p.contains(key)) return fallback;
  if (!p[key].is_string()) throw ProtocolError(std::string("'") + key + "' must be a string");
  return p[key].get<std::string>();
}

bool boolean(const json& p, const char* key, bool fallback) {
  if (!p.contains(key)) return fallback;
  if (!p[key].is_boolean()) throw ProtocolError(std::string("'") + key + "' must be a boolean");
  return p[key].get<bool>();
}

std::optional<Vec2> point(const json& p, const char* key) {
  if (!p.contains(key)) return std::nullopt;
  const json& v = p[key];
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ProtocolError(std::string("'") + key + "' must be [x, y]");
  }
  return Vec2{v[0].get<double>(), v[1].get<double>()};
}

json xy(Vec2 v) { return json::array({v.x, v.y}); }

// Planner and controller fields shared by Reset, StartAuto and PlanPreview.
void read_combo(const json& p, bench::EpisodeConfig& c) {
  if (p.contains("planner")) c.planner = planning::parse_planner(text(p, "planner", ""));
  if (p.contains("controller")) c.controller = control::parse_law(text(p, "controller", ""));
}

const std::string kModeConflict = "mode conflict";

}  // namespace

namespace {

bench::EpisodeConfig checked(bench::EpisodeConfig c) {
  c.sim.flow_enabled = c.flow_on;
  c.validate();
  return c;
}

}  // namespace

Session::Session(bench::EpisodeConfig base)
    : cfg_(checked(std::move(base))), scene_(bench::generate_scenario(cfg_)) {}

const sim::World& Session::world() const { return runner_ ? runner_->world() : scene_.world; }

sim::World& Session::mutable_world() { return scene_.world; }

Message Session::make(Tag tag, json payload) { return {++out_seq_, tag, std::move(payload)}; }

Message Session::ack(const Message& in, json extra) {
  extra["re"] = in.seq;
  extra["mode"] = mode_name(mode_);
  return make(Tag::Ack, std::move(extra));
}

Message Session::error(std::optional<std::int64_t> re, const std::string& reason) {
  json p = {{"reason", reason}, {"mode", mode_name(mode_)}};
  p["re"] = re ? json(*re) : json(nullptr);
  return make(Tag::Error, std::move(p));
}

Message Session::observation() { return make(Tag::Observation, observation_payload()); }

Message Session::diagnostics() { return make(Tag::Diagnostics, diagnostics_payload()); }

void Session::leave_auto() {
  if (!runner_) return;
  scene_ = runner_->scenario();
  runner_.reset();
}

json Session::diagnostics_payload() const {
  json d;
  const sim::World& w = world();
  int cell = direction_cell_;
  if (runner_) {
    const bench::StepFrame& f = runner_->last_frame();
    const control::Diagnostics& cd = runner_->diagnostics();
    cell = runner_->active_cell();
    d = {{"stage", bench::stage_name(runner_->stage())},
         {"phase", control::phase_name(f.phase)},
         {"omega", f.cmd.omega},
         {"theta", f.cmd.theta},
         {"solver_ok", f.solver_ok},
         {"active_cell", cell},
         {"goal", xy(runner_->active_goal())},
         {"revert_timer", 0}};
    if (runner_->stage() == bench::Stage::Push) {
      d["p_ref"] = xy(cd.p_ref);
      d["tracking_error_px"] = cd.error.norm();
    }
  } else {
    d = {{"stage", direction_cell_ >= 0 ? "direction" : "manual"},
         {"phase", control::phase_name(diag_.phase)},
         {"omega", last_cmd_.omega},
         {"theta", last_cmd_.theta},
         {"solver_ok", diag_.solver_ok},
         {"active_cell", direction_cell_},
         {"revert_timer", ctrl_.ref.revert_timer}};
    if (direction_cell_ >= 0) {
      d["p_ref"] = xy(diag_.p_ref);
      d["tracking_error_px"] = diag_.error.norm();
    }
  }
  d["robot_speed_px"] = w.robot().velocity.norm();
  if (const sim::Body* b = cell >= 0 ? w.find(cell) : nullptr) d["cell_speed_px"] = b->velocity.norm();
  d["error"] = halted_;
  if (halted_) d["reason"] = halt_reason_;
  d["t"] = w.time();
  d["step"] = w.step_count();
  return d;
}

json Session::observation_payload() const {
  json p = {{"mode", mode_name(mode_)},
            {"task", bench::task_name(cfg_.task)},
            {"seed", cfg_.seed},
            {"flow_on", cfg_.flow_on},
            {"planner", planning::planner_name(cfg_.planner)},
            {"controller", control::law_name(cfg_.controller)},
            {"observation", sim::observation_to_json(world().observe())},
            {"status", runner_ ? bench::status_name(runner_->status()) : "idle"},
            {"direction_cell", direction_cell_},
            {"replay", false},
            {"diagnostics", diagnostics_payload()}};
  const bench::Scenario& sc = runner_ ? runner_->scenario() : scene_;
  if (cfg_.task == bench::Task::Transport) {
    p["goal"] = xy(sc.goal);
    p["selected_cell"] = sc.selected_cell;
  } else {
    json v = json::array();
    for (const Vec2& q : sc.vertices) v.push_back(xy(q));
    p["hex_vertices"] = std::move(v);
  }
  if (runner_) {
    p["approach_path"] = planning::polyline_to_json(runner_->approach_path());
    p["push_path"] = planning::polyline_to_json(runner_->push_path());
  }
  return p;
}

std::vector<Message> Session::handle_text(std::string_view text) {
  Message m;
  try {
    m = deserialize(text);
  } catch (const ProtocolError& e) {
    return {error(std::nullopt, e.what())};
  }
  return handle(m);
}

std::vector<Message> Session::handle(const Message& in) {
  if (!is_request(in.tag)) return {error(in.seq, "tag " + tag_name(in.tag) + " is server-only")};
  if (last_in_seq_ && in.seq <= *last_in_seq_) {
    return {error(in.seq, "sequence number must increase (last " + std::to_string(*last_in_seq_) + ")")};
  }
  last_in_seq_ = in.seq;
  // Handlers validate everything before touching state, so an Error leaves
  // the session as it was.
  try {
    switch (in.tag) {
      case Tag::Reset: return on_reset(in);
      case Tag::Step: return on_step(in);
      case Tag::SetMode: return on_set_mode(in);
      case Tag::PlanPreview: return on_plan_preview(in);
      case Tag::StartAuto: return on_start_auto(in);
      case Tag::Pause: return on_pause(in);
      case Tag::Replay: return on_replay(in);
      default: break;
    }
  } catch (const Error& e) {
    return {error(in.seq, e.what())};
  } catch (const json::exception& e) {
    return {error(in.seq, std::string("malformed payload: ") + e.what())};
  }
  return {error(in.seq, "unhandled tag")};
}

std::vector<Message> Session::on_reset(const Message& in) {
  if (is_auto(mode_)) return {error(in.seq, kModeConflict)};
  const json& p = in.payload;
  bench::EpisodeConfig c = cfg_;
  const std::int64_t seed = integer(p, "seed", static_cast<std::int64_t>(cfg_.seed));
  if (seed < 0) throw ProtocolError("'seed' must be >= 0");
  c.seed = static_cast<std::uint64_t>(seed);
  c.task = bench::parse_task(text(p, "task", bench::task_name(cfg_.task)));
  c.flow_on = boolean(p, "flow_on", false);
  read_combo(p, c);
  c.sim.flow_enabled = c.flow_on;
  c.validate();
  bench::Scenario sc = bench::generate_scenario(c);

  cfg_ = std::move(c);
  scene_ = std::move(sc);
  runner_.reset();
  mode_ = Mode::ManualDirection;
  resume_mode_ = Mode::ManualDirection;
  direction_cell_ = -1;
  ctrl_ = {};
  diag_ = {};
  last_cmd_ = {};
  halted_ = false;
  halt_reason_.clear();
  return {ack(in), observation()};
}

std::vector<Message> Session::on_step(const Message& in) {
  if (is_auto(mode_)) return {error(in.seq, kModeConflict)};
  if (mode_ == Mode::Paused) return {error(in.seq, "session is paused")};
  const double omega = number(in.payload, "omega");
  const double theta = number(in.payload, "theta");
  const double omega_max = cfg_.sim.omega_max;
  if (!std::isfinite(omega) || omega < 0.0 || omega > omega_max) {
    std::ostringstream s;
    s << "omega " << omega << " outside [0, " << omega_max << "] Hz";
    return {error(in.seq, s.str())};
  }
  if (!std::isfinite(theta)) return {error(in.seq, "theta must be finite")};

  sim::ActuationCommand cmd{omega, theta};
  if (direction_cell_ >= 0) {
    const sim::World& w = world();
    const sim::Body* cell = w.find(direction_cell_);
    const Vec2 c = cell->position;
    const Vec2 goal = c + Vec2{std::cos(theta), std::sin(theta)} * (cfg_.sim.width + cfg_.sim.height);
    control::ControllerState next = ctrl_;
    const auto out = control::control_step(w.robot().position, w.robot().radius, c, cell->radius,
                                           goal, cfg_.controller, next, cfg_.control, cfg_.sim);
    ctrl_ = next;
    diag_ = out.diag;
    cmd = out.actuation;
    cmd.omega = std::min(cmd.omega, omega);
  }
  mutable_world().step(cmd);
  last_cmd_ = cmd;
  return {ack(in), observation()};
}

std::vector<Message> Session::on_set_mode(const Message& in) {
  const std::string name = text(in.payload, "mode", "");
  const auto m = parse_mode(name);
  if (!m) throw ProtocolError("unknown mode '" + name + "'");
  switch (*m) {
    case Mode::Paused:
      if (mode_ != Mode::Paused) resume_mode_ = mode_;
      mode_ = Mode::Paused;
      break;
    case Mode::ManualDirection: {
      const std::int64_t cell = integer(in.payload, "cell_id", -1);
      bench::EpisodeConfig c = cfg_;
      read_combo(in.payload, c);
      if (cell >= 0) {
        const sim::Body* b = world().find(static_cast<int>(cell));
        if (!b || b->kind != sim::BodyKind::Cell) {
          throw ProtocolError("no cell with id " + std::to_string(cell));
        }
      }
      leave_auto();
      cfg_ = std::move(c);
      direction_cell_ = cell >= 0 ? static_cast<int>(cell) : -1;
      ctrl_ = {};
      ctrl_.ref.direction_mode = true;
      diag_ = {};
      halted_ = false;
      halt_reason_.clear();
      mode_ = Mode::ManualDirection;
      break;
    }
    case Mode::AutoTransport:
    case Mode::AutoAssembly: {
      const bench::Task want =
          *m == Mode::AutoTransport ? bench::Task::Transport : bench::Task::Assembly;
      if (!runner_ || runner_->done() || runner_->config().task != want || halted_) {
        return {error(in.seq, "no " + bench::task_name(want) + " run to resume; send StartAuto")};
      }
      mode_ = *m;
      break;
    }
  }
  return {ack(in)};
}

std::vector<Message> Session::on_pause(const Message& in) {
  if (mode_ != Mode::Paused) resume_mode_ = mode_;
  mode_ = Mode::Paused;
  return {ack(in, {{"resume_mode", mode_name(resume_mode_)}})};
}

std::vector<Message> Session::on_start_auto(const Message& in) {
  if (is_auto(mode_)) return {error(in.seq, kModeConflict)};
  const json& p = in.payload;
  bench::EpisodeConfig c = cfg_;
  const bench::Task task = bench::parse_task(text(p, "task", bench::task_name(cfg_.task)));
  if (task != cfg_.task) {
    return {error(in.seq, "scene was built for " + bench::task_name(cfg_.task) +
                              "; send Reset with task " + bench::task_name(task) + " first")};
  }
  read_combo(p, c);
  const bench::Scenario& base = runner_ ? runner_->scenario() : scene_;
  bench::EpisodeRunner r(c, base);

  leave_auto();
  cfg_ = std::move(c);
  runner_.emplace(std::move(r));
  direction_cell_ = -1;
  halted_ = false;
  halt_reason_.clear();
  if (runner_->done()) {
    mode_ = Mode::Paused;
    resume_mode_ = Mode::ManualDirection;
  } else {
    mode_ = task == bench::Task::Transport ? Mode::AutoTransport : Mode::AutoAssembly;
  }
  return {ack(in), observation()};
}

std::vector<Message> Session::on_plan_preview(const Message& in) {
  if (is_auto(mode_)) return {error(in.seq, kModeConflict)};
  const json& p = in.payload;
  bench::EpisodeConfig c = cfg_;
  read_combo(p, c);
  bench::Scenario sc = runner_ ? runner_->scenario() : scene_;
  const auto goal = point(p, "goal");
  const std::int64_t cell = integer(p, "cell_id", direction_cell_ >= 0 ? direction_cell_ : sc.selected_cell);
  if (goal || p.contains("cell_id") || c.task == bench::Task::Transport) {
    // Single push of one cell: the transport pipeline on a retargeted scene.
    const sim::Body* b = cell >= 0 ? sc.world.find(static_cast<int>(cell)) : nullptr;
    if (!b || b->kind != sim::BodyKind::Cell) throw ProtocolError("no cell with id " + std::to_string(cell));
    if (!goal && c.task != bench::Task::Transport) throw ProtocolError("'goal' required for a cell preview");
    c.task = bench::Task::Transport;
    sc.selected_cell = static_cast<int>(cell);
    if (goal) sc.goal = *goal;
  }
  const bench::EpisodeRunner preview(c, std::move(sc));
  json out = {{"planner", planning::planner_name(c.planner)},
              {"active_cell", preview.active_cell()},
              {"goal", xy(preview.active_goal())},
              {"approach_path", planning::polyline_to_json(preview.approach_path())},
              {"push_path", planning::polyline_to_json(preview.push_path())}};
  if (c.task == bench::Task::Assembly) out["sequence"] = task::sequence_to_json(preview.remaining());
  if (preview.done()) out["already_at_goal"] = true;
  return {ack(in, std::move(out))};
}

std::vector<Message> Session::on_replay(const Message& in) {
  if (is_auto(mode_)) return {error(in.seq, kModeConflict)};
  if (!in.payload.contains("dump") || !in.payload["dump"].is_string()) {
    throw ProtocolError("'dump' must be the JSON-lines text of a trajectory dump");
  }
  const TrajectoryDump d = parse_dump(in.payload["dump"].get<std::string>());
  std::vector<Message> out;
  out.push_back(ack(in, {{"frames", d.frames.size()}, {"header", d.header}}));
  for (std::size_t i = 0; i < d.frames.size(); ++i) {
    out.push_back(make(Tag::Observation, {{"replay", true},
                                          {"index", i},
                                          {"count", d.frames.size()},
                                          {"frame", d.frames[i]}}));
  }
  return out;
}

std::vector<Message> Session::tick() {
  if (!is_auto(mode_) || !runner_) return {};
  try {
    runner_->step();
  } catch (const std::exception& e) {
    halted_ = true;
    halt_reason_ = e.what();
    mode_ = Mode::Paused;
    resume_mode_ = Mode::ManualDirection;
    return {diagnostics()};
  }
  if (runner_->done()) {
    mode_ = Mode::Paused;
    resume_mode_ = Mode::ManualDirection;
  }
  std::vector<Message> out;
  out.push_back(observation());
  out.push_back(diagnostics());
  return out;
}

}  // namespace micropush::session
