#include "c3a/serve.hpp"

#include <array>
#include <chrono>
#include <deque>
#include <iostream>
#include <set>
#include <thread>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "c3a/codec.hpp"
#include "c3a/error.hpp"

namespace c3a {

namespace beast = boost::beast;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

constexpr std::size_t kMaxQueuedFrames = 4096;
constexpr std::array<Topic, 4> kReplayOrder = {Topic::Map, Topic::Goal, Topic::Mode, Topic::CognitiveScore};

std::string error_frame(const std::string& kind, const std::string& message) {
  return json{{"error", kind}, {"message", message}}.dump();
}

}  // namespace

struct BridgeServer::Impl {
  class Client;

  net::io_context ioc{1};
  tcp::acceptor acceptor{ioc};
  std::thread thread;
  std::set<std::shared_ptr<Client>> clients;
  std::array<std::shared_ptr<const std::string>, kAllTopics.size()> latched{};
  HandoffQueue<Envelope> outbound;
  HandoffQueue<Envelope> inbound;
  std::atomic<std::size_t> client_count{0};
  bool running = false;

  void accept();
  void flush();
  void handle_text(Client& client, const std::string& text);
};

class BridgeServer::Impl::Client : public std::enable_shared_from_this<Client> {
 public:
  Client(tcp::socket socket, Impl& server) : ws_(std::move(socket)), server_(server) {}

  void run() {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(beast::bind_front_handler(&Client::on_accept, shared_from_this()));
  }

  void send(std::shared_ptr<const std::string> frame) {
    if (closed_) return;
    if (queue_.size() >= kMaxQueuedFrames) {
      close();
      return;
    }
    queue_.push_back(std::move(frame));
    if (queue_.size() == 1) write_next();
  }

 private:
  void on_accept(beast::error_code ec) {
    if (ec) return;
    server_.clients.insert(shared_from_this());
    server_.client_count = server_.clients.size();
    for (Topic t : kReplayOrder) {
      if (const auto& f = server_.latched[static_cast<std::size_t>(t)]) send(f);
    }
    read_next();
  }

  void read_next() { ws_.async_read(buffer_, beast::bind_front_handler(&Client::on_read, shared_from_this())); }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) {
      close();
      return;
    }
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    server_.handle_text(*this, text);
    read_next();
  }

  void write_next() {
    ws_.text(true);
    ws_.async_write(net::buffer(*queue_.front()), beast::bind_front_handler(&Client::on_write, shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t) {
    if (ec) {
      close();
      return;
    }
    queue_.pop_front();
    if (!queue_.empty()) write_next();
  }

  void close() {
    if (closed_) return;
    closed_ = true;
    queue_.clear();
    beast::error_code ignored;
    beast::get_lowest_layer(ws_).socket().close(ignored);
    server_.clients.erase(shared_from_this());
    server_.client_count = server_.clients.size();
  }

  websocket::stream<beast::tcp_stream> ws_;
  Impl& server_;
  beast::flat_buffer buffer_;
  std::deque<std::shared_ptr<const std::string>> queue_;
  bool closed_ = false;
};

void BridgeServer::Impl::accept() {
  acceptor.async_accept(ioc, [this](beast::error_code ec, tcp::socket socket) {
    if (ec) return;
    std::make_shared<Client>(std::move(socket), *this)->run();
    accept();
  });
}

void BridgeServer::Impl::flush() {
  for (const Envelope& env : outbound.drain()) {
    auto frame = std::make_shared<const std::string>(bridge_encode(env));
    if (is_latched(env.topic)) latched[static_cast<std::size_t>(env.topic)] = frame;
    // Copy: a failing send removes the client from the set.
    const auto targets = std::vector<std::shared_ptr<Client>>(clients.begin(), clients.end());
    for (const auto& c : targets) c->send(frame);
  }
}

void BridgeServer::Impl::handle_text(Client& client, const std::string& text) {
  try {
    Envelope env = bridge_decode(text);
    if (!client_may_publish(env.topic)) {
      client.send(std::make_shared<const std::string>(
          error_frame("Forbidden", "clients may not publish on " + std::string(topic_name(env.topic)))));
      return;
    }
    inbound.push(std::move(env));
  } catch (const Error& e) {
    client.send(std::make_shared<const std::string>(error_frame(std::string(to_string(e.kind())), e.what())));
  }
}

BridgeServer::BridgeServer(const std::string& address, std::uint16_t port) : impl_(std::make_unique<Impl>()) {
  const tcp::endpoint endpoint(net::ip::make_address(address), port);
  beast::error_code ec;
  impl_->acceptor.open(endpoint.protocol(), ec);
  if (!ec) impl_->acceptor.set_option(net::socket_base::reuse_address(true), ec);
  if (!ec) impl_->acceptor.bind(endpoint, ec);
  if (!ec) impl_->acceptor.listen(net::socket_base::max_listen_connections, ec);
  if (ec) throw Error(ErrorKind::IoFailure, "cannot listen on " + address + ":" + std::to_string(port) + ": " + ec.message());
}

BridgeServer::~BridgeServer() { stop(); }

std::uint16_t BridgeServer::port() const { return impl_->acceptor.local_endpoint().port(); }

void BridgeServer::start() {
  if (impl_->running) return;
  impl_->running = true;
  impl_->accept();
  impl_->thread = std::thread([this] { impl_->ioc.run(); });
}

void BridgeServer::stop() {
  if (!impl_->running) return;
  impl_->running = false;
  impl_->ioc.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

void BridgeServer::broadcast(const Envelope& envelope) {
  impl_->outbound.push(envelope);
  net::post(impl_->ioc, [impl = impl_.get()] { impl->flush(); });
}

std::vector<Envelope> BridgeServer::take_inbound() { return impl_->inbound.drain(); }

std::size_t BridgeServer::client_count() const { return impl_->client_count; }

// ---------------------------------------------------------------------------

LiveSession::LiveSession(GridWorld world, SessionConfig config, double key_hold)
    : session_(std::make_unique<Session>(std::move(world), std::move(config))), key_hold_(key_hold) {}

void LiveSession::handle(const Envelope& from_client) {
  if (!from_client.payload || from_client.payload->index() != payload_index_for(from_client.topic)) {
    throw Error(ErrorKind::PayloadTypeMismatch, "client envelope payload does not match its topic");
  }
  switch (from_client.topic) {
    case Topic::CmdVelHuman:
      held_ = from_client.as<VelocityCommand>();
      held_since_ = session_->now();
      break;
    case Topic::Goal:
      session_->set_goal(from_client.as<GoalPose>().cell);
      break;
    default:
      throw Error(ErrorKind::UnknownTopic, "clients may not publish on " + std::string(topic_name(from_client.topic)));
  }
}

void LiveSession::tick() {
  const double now = session_->now();
  if (held_ && now - held_since_ > key_hold_ + 1e-9) held_.reset();
  session_->tick([this](const Session&) { return held_; });
}

void serve(const ServeOptions& options, const std::atomic<bool>& stop,
           const std::function<void(std::uint16_t)>& on_ready) {
  BridgeServer server(options.address, options.port);
  LiveSession live(options.world, options.session, options.key_hold);
  live.session().bus().subscribe_all([&server](const Envelope& e) { server.broadcast(e); });
  server.start();
  if (on_ready) on_ready(server.port());

  using clock = std::chrono::steady_clock;
  const auto period = std::chrono::duration_cast<clock::duration>(
      std::chrono::duration<double>(live.session().config().dt * options.pace));
  auto deadline = clock::now();
  while (!stop.load()) {
    if (options.sim_duration && live.session().now() >= *options.sim_duration - 1e-9) break;
    for (const Envelope& env : server.take_inbound()) {
      try {
        live.handle(env);
      } catch (const Error& e) {
        std::cerr << "c3a serve: rejected " << topic_name(env.topic) << ": " << e.what() << '\n';
      }
    }
    live.tick();
    if (options.pace > 0.0) {
      deadline += period;
      std::this_thread::sleep_until(deadline);
    }
  }
  server.stop();
}

}  // namespace c3a
