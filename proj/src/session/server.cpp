#include "micropush/session/server.hpp"

#include <chrono>
#include <deque>
#include <csignal>
#include <iostream>
#include <thread>
#include <vector>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/signal_set.hpp>
#include <boost/asio/steady_timer.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "micropush/core/error.hpp"
#include "micropush/session/outbox.hpp"
#include "micropush/session/session.hpp"

namespace micropush::session {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

class Connection : public std::enable_shared_from_this<Connection> {
 public:
  Connection(tcp::socket socket, const ServerConfig& cfg)
      : ws_(std::move(socket)),
        timer_(ws_.get_executor()),
        session_(cfg.base),
        period_(std::chrono::duration_cast<Clock::duration>(
            std::chrono::duration<double>(1.0 / cfg.tick_hz))),
        outbox_(cfg.max_pending_frames) {}

  void start() {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(beast::bind_front_handler(&Connection::on_accept, shared_from_this()));
  }

 private:
  using Clock = std::chrono::steady_clock;

  websocket::stream<beast::tcp_stream> ws_;
  asio::steady_timer timer_;
  Session session_;
  Clock::duration period_;
  Clock::time_point next_tick_;
  beast::flat_buffer buffer_;
  std::deque<std::string> inbox_;
  Outbox outbox_;
  bool closed_ = false;

  void on_accept(beast::error_code ec) {
    if (ec) return;
    // The opening frame, so a client sees the scene before its first request.
    enqueue(Message{0, Tag::Observation, session_.observation_payload()}, false);
    do_read();
    next_tick_ = Clock::now() + period_;
    arm_timer();
  }

  void do_read() {
    ws_.async_read(buffer_, beast::bind_front_handler(&Connection::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) {
      closed_ = true;
      timer_.cancel();
      return;
    }
    inbox_.push_back(beast::buffers_to_string(buffer_.data()));
    buffer_.consume(buffer_.size());
    do_read();
  }

  void arm_timer() {
    timer_.expires_at(next_tick_);
    timer_.async_wait(beast::bind_front_handler(&Connection::on_tick, shared_from_this()));
  }

  void on_tick(beast::error_code ec) {
    if (ec || closed_) return;
    while (!inbox_.empty()) {
      for (Message& m : session_.handle_text(inbox_.front())) enqueue(std::move(m), false);
      inbox_.pop_front();
    }
    for (Message& m : session_.tick()) enqueue(std::move(m), true);
    next_tick_ += period_;
    // After a long stall, resume the cadence instead of bursting.
    if (next_tick_ < Clock::now() - 4 * period_) next_tick_ = Clock::now() + period_;
    arm_timer();
  }

  void enqueue(Message m, bool live) {
    Outbox::Kind kind = Outbox::Kind::Reply;
    if (live) {
      kind = m.tag == Tag::Observation ? Outbox::Kind::LiveObservation : Outbox::Kind::LiveDiagnostics;
    }
    outbox_.push(serialize(m), kind);
    do_write();
  }

  void do_write() {
    if (outbox_.writing() || outbox_.empty() || closed_) return;
    ws_.text(true);
    ws_.async_write(asio::buffer(outbox_.begin_write()),
                    beast::bind_front_handler(&Connection::on_write, shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t) {
    if (ec) {
      closed_ = true;
      timer_.cancel();
      return;
    }
    outbox_.pop();
    do_write();
  }
};

}  // namespace

struct Server::Impl {
  ServerConfig cfg;
  asio::io_context ioc;
  tcp::acceptor acceptor{ioc};

  explicit Impl(ServerConfig c) : cfg(std::move(c)), ioc(std::max(1, cfg.threads)) {}

  void accept() {
    acceptor.async_accept(asio::make_strand(ioc), [this](beast::error_code ec, tcp::socket s) {
      if (ec) return;  // acceptor closed
      std::make_shared<Connection>(std::move(s), cfg)->start();
      accept();
    });
  }
};

Server::Server(ServerConfig cfg) : impl_(std::make_unique<Impl>(std::move(cfg))) {
  const ServerConfig& c = impl_->cfg;
  if (!(c.tick_hz > 0.0)) throw ConfigError("tick rate must be positive");
  c.base.validate();
  beast::error_code ec;
  const auto addr = asio::ip::make_address(c.address, ec);
  if (ec) throw ConfigError("bad listen address '" + c.address + "'");
  const tcp::endpoint ep{addr, c.port};
  auto& a = impl_->acceptor;
  a.open(ep.protocol(), ec);
  if (!ec) a.set_option(asio::socket_base::reuse_address(true), ec);
  if (!ec) a.bind(ep, ec);
  if (!ec) a.listen(asio::socket_base::max_listen_connections, ec);
  if (ec) throw Error("cannot listen on " + c.address + ":" + std::to_string(c.port) + ": " + ec.message());
  impl_->accept();
}

Server::~Server() = default;

unsigned short Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::run() {
  std::vector<std::thread> extra;
  for (int i = 1; i < impl_->cfg.threads; ++i) extra.emplace_back([this] { impl_->ioc.run(); });
  impl_->ioc.run();
  for (auto& t : extra) t.join();
}

void Server::stop() { impl_->ioc.stop(); }

int run_server(const ServerConfig& cfg) {
  try {
    Server server(cfg);
    asio::io_context sig_ctx;
    asio::signal_set signals(sig_ctx, SIGINT, SIGTERM);
    signals.async_wait([&](beast::error_code, int) { server.stop(); });
    std::thread sig_thread([&] { sig_ctx.run(); });
    std::cout << "listening on ws://" << cfg.address << ":" << server.port() << std::endl;
    server.run();
    sig_ctx.stop();
    sig_thread.join();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace micropush::session
