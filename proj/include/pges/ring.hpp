#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pges/counters.hpp"
#include "pges/ges.hpp"
#include "pges/instance.hpp"
#include "pges/solution.hpp"

namespace pges {

// Immutable snapshot exchanged around the ring. A solution payload is
// attached only when the sender's route count decreased since its previous
// send; finished-only messages travel bare.
struct CooperationMessage {
  int sender = 0;
  int route_count = 0;
  bool finished = false;
  std::optional<std::vector<std::vector<int>>> payload;

  // Units of payload handling work: one per point id carried, minimum one
  // for the header.
  std::size_t payload_units() const;

  // Wire format: u32 record length, u32 sender, u32 route_count,
  // u8 finished, u8 payload flag, then the payload as solution-file body
  // text (one space-separated id line per route). Little-endian.
  std::vector<std::uint8_t> encode() const;
  static CooperationMessage decode(const std::vector<std::uint8_t>& bytes);
};

struct RingTopology {
  int p = 1;
  int next(int i) const { return (i + 1) % p; }
  int prev(int i) const { return (i - 1 + p) % p; }
};

// Bounded point-to-point mailbox. Sends never block: on overflow the oldest
// message is dropped, since only the newest solution matters.
class Channel {
 public:
  explicit Channel(std::size_t capacity = 4) : capacity_(capacity) {}

  void push(CooperationMessage msg);
  std::vector<CooperationMessage> drain();
  std::size_t pending() const;

 private:
  mutable std::mutex mu_;
  std::deque<CooperationMessage> queue_;
  std::size_t capacity_;
};

struct LogRecord {
  double t_seconds = 0.0;
  int sender = 0;
  int route_count = 0;
  bool finished = false;
  bool has_payload = false;
  std::size_t payload_units = 0;

  std::string to_line() const;
};

// Thread-safe append-only record of every message sent.
class MessageLog {
 public:
  MessageLog() : start_(std::chrono::steady_clock::now()) {}
  void append(const CooperationMessage& msg);
  std::vector<LogRecord> records() const;
  void write(std::ostream& out) const;

 private:
  mutable std::mutex mu_;
  std::vector<LogRecord> records_;
  std::chrono::steady_clock::time_point start_;
};

class WatchdogError : public std::runtime_error {
 public:
  explicit WatchdogError(const std::string& what) : std::runtime_error(what) {}
};

// One worker's endpoint in the ring. Owns the cooperation state machine;
// all channel operations are non-blocking.
class RingWorker {
 public:
  RingWorker(int index, RingTopology topo, Channel* out, Channel* in,
             MessageLog* log = nullptr)
      : index_(index), topo_(topo), out_(out), in_(in), log_(log) {}

  void attach_counters(OpCounters* counters) { counters_ = counters; }

  // Send phase + receive phase. Emits a message when the route count
  // decreased since the previous send or when finished must propagate.
  // Returns true once finished is in effect (locally or observed).
  bool cooperate(int route_count,
                 const std::function<std::vector<std::vector<int>>()>& snapshot,
                 bool local_finished);

  // Best received payload with strictly fewer routes than `current`; at
  // most one pending payload is kept (the fewest-routes one seen).
  std::optional<std::vector<std::vector<int>>> take_incoming(int current);

  // Keeps relaying cooperation messages after the local loop has exited so
  // no peer blocks on this worker. Returns once finished is observed from
  // the ring; `give_up` can abort the wait (e.g. when a peer crashed).
  void drain_until_finished(double watchdog_seconds,
                            const std::function<bool()>& give_up = {});

  bool observed_finished() const { return observed_finished_; }
  int index() const { return index_; }
  int last_sent_route_count() const { return last_sent_rc_; }
  std::string state_dump() const;

 private:
  int index_;
  RingTopology topo_;
  Channel* out_;
  Channel* in_;
  MessageLog* log_;
  OpCounters* counters_ = nullptr;

  int last_sent_rc_ = std::numeric_limits<int>::max();
  bool finished_announced_ = false;
  bool observed_finished_ = false;
  std::optional<std::vector<std::vector<int>>> incoming_;
  int incoming_rc_ = std::numeric_limits<int>::max();
};

// Runs `body` on p dedicated threads wired into a unidirectional ring.
// Rethrows the first worker exception after joining everyone.
void run_ring(int p, const std::function<void(RingWorker&)>& body,
              MessageLog* log = nullptr);

struct ParallelOptions {
  double watchdog_seconds = 30.0;
  MessageLog* log = nullptr;
};

struct WorkerReport {
  int index = 0;
  Solution best;
  OpCounters counters;
  std::uint64_t attempts = 0;
};

struct ParallelResult {
  Solution best;
  int best_worker = 0;
  std::vector<WorkerReport> workers;
  OpCounters total;
  double wall_seconds = 0.0;
};

// Launches p GES workers with derived seeds, runs the route-minimization
// loop on each, and returns the fewest-routes solution (ties to the lowest
// worker index). p = 1 reduces exactly to the sequential solver.
ParallelResult run_parallel(const Instance& inst, const GesConfig& config,
                            int p, const ParallelOptions& options = {});

// Seed for worker i derived from the global seed (splitmix64 step).
std::uint64_t worker_seed(std::uint64_t global_seed, int worker_index);

}  // namespace pges
