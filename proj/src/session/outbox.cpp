#include "micropush/session/outbox.hpp"

#include <stdexcept>

namespace micropush::session {

std::size_t Outbox::live_count() const {
  std::size_t n = 0;
  for (const Entry& e : q_) n += e.kind != Kind::Reply ? 1 : 0;
  return n;
}

void Outbox::push(std::string text, Kind kind) {
  q_.push_back({std::move(text), kind});
  if (kind != Kind::Reply && live_count() > max_live_) coalesce();
}

void Outbox::coalesce() {
  const std::size_t first = writing_ ? 1 : 0;
  bool kept_obs = false, kept_diag = false;
  for (std::size_t i = q_.size(); i-- > first;) {
    if (q_[i].kind == Kind::Reply) continue;
    bool& kept = q_[i].kind == Kind::LiveObservation ? kept_obs : kept_diag;
    if (kept) {
      q_.erase(q_.begin() + static_cast<long>(i));
    } else {
      kept = true;
    }
  }
}

const std::string& Outbox::begin_write() {
  if (q_.empty()) throw std::logic_error("empty outbox");
  writing_ = true;
  return q_.front().text;
}

void Outbox::pop() {
  if (q_.empty()) throw std::logic_error("empty outbox");
  q_.pop_front();
  writing_ = false;
}

}  // namespace micropush::session
