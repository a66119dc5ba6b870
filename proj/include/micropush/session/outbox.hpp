#pragma once

#include <cstddef>
#include <deque>
#include <string>

namespace micropush::session {

/// Outgoing text frames of one connection. Live tick frames beyond the
/// limit coalesce: only the newest live Observation and the newest live
/// Diagnostics survive. Replies (Ack, Error, replay frames) are never dropped.
class Outbox {
 public:
  enum class Kind { Reply, LiveObservation, LiveDiagnostics };

  explicit Outbox(std::size_t max_live = 60) : max_live_(max_live) {}

  void push(std::string text, Kind kind);
  bool empty() const { return q_.empty(); }
  std::size_t size() const { return q_.size(); }
  std::size_t live_count() const;
  /// Marks the head as being written; it survives coalescing until pop().
  const std::string& begin_write();
  void pop();
  bool writing() const { return writing_; }

 private:
  struct Entry {
    std::string text;
    Kind kind;
  };
  std::deque<Entry> q_;
  std::size_t max_live_;
  bool writing_ = false;

  void coalesce();
};

}  // namespace micropush::session
