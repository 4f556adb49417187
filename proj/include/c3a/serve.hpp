#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "c3a/bus.hpp"
#include "c3a/harness.hpp"

namespace c3a {

/// WebSocket endpoint for the cockpit UI. Every text frame is one bridge frame.
/// Outbound envelopes are handed over from the tick loop; inbound frames on
/// client-publishable topics are decoded and queued for the loop to drain.
/// A newly connected client first receives the retained latched frames.
class BridgeServer {
 public:
  /// Binds immediately. Port 0 picks a free port.
  BridgeServer(const std::string& address, std::uint16_t port);
  ~BridgeServer();
  BridgeServer(const BridgeServer&) = delete;
  BridgeServer& operator=(const BridgeServer&) = delete;

  std::uint16_t port() const;
  /// Starts the network thread.
  void start();
  void stop();

  /// Thread-safe. Queues an envelope for every connected client.
  void broadcast(const Envelope& envelope);
  /// Thread-safe. Envelopes received from clients since the last call.
  std::vector<Envelope> take_inbound();
  std::size_t client_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// A Session driven by remote input: the latest /cmd_vel_human counts as held
/// for `key_hold` seconds of sim time, /goal frames move the shared goal.
class LiveSession {
 public:
  LiveSession(GridWorld world, SessionConfig config, double key_hold = 0.15);

  /// Applies one client envelope. Throws PayloadTypeMismatch or ConfigInvalid.
  void handle(const Envelope& from_client);
  void tick();

  Session& session() { return *session_; }
  const Session& session() const { return *session_; }

 private:
  std::unique_ptr<Session> session_;
  double key_hold_;
  std::optional<VelocityCommand> held_;
  double held_since_ = 0.0;
};

struct ServeOptions {
  std::string address = "127.0.0.1";
  std::uint16_t port = 8765;
  GridWorld world;
  SessionConfig session;
  double key_hold = 0.15;
  /// Wall-clock seconds per sim second; 1 runs in real time, 0 as fast as possible.
  double pace = 1.0;
  /// Stop after this much sim time (unbounded when unset).
  std::optional<double> sim_duration;
};

/// Runs a live session behind a BridgeServer until `stop` is set or the sim
/// duration elapses. `on_ready` receives the bound port.
void serve(const ServeOptions& options, const std::atomic<bool>& stop,
           const std::function<void(std::uint16_t)>& on_ready = {});

}  // namespace c3a
