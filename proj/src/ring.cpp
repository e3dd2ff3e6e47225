#include "pges/ring.hpp"

#include <cstring>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

namespace pges {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xFF));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

std::size_t CooperationMessage::payload_units() const {
  if (!payload) return 1;
  std::size_t units = 0;
  for (const auto& route : *payload) units += route.size();
  return std::max<std::size_t>(units, 1);
}

std::vector<std::uint8_t> CooperationMessage::encode() const {
  std::string body;
  if (payload) {
    std::ostringstream ss;
    for (const auto& route : *payload) {
      for (std::size_t i = 0; i < route.size(); ++i) {
        if (i) ss << ' ';
        ss << route[i];
      }
      ss << '\n';
    }
    body = ss.str();
  }
  std::vector<std::uint8_t> out;
  out.reserve(14 + body.size());
  put_u32(out, static_cast<std::uint32_t>(10 + body.size()));
  put_u32(out, static_cast<std::uint32_t>(sender));
  put_u32(out, static_cast<std::uint32_t>(route_count));
  out.push_back(finished ? 1 : 0);
  out.push_back(payload ? 1 : 0);
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

CooperationMessage CooperationMessage::decode(
    const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 14) throw std::invalid_argument("short message record");
  const std::uint32_t len = get_u32(bytes.data());
  if (bytes.size() != len + 4) {
    throw std::invalid_argument("message length prefix mismatch");
  }
  CooperationMessage msg;
  msg.sender = static_cast<int>(get_u32(bytes.data() + 4));
  msg.route_count = static_cast<int>(get_u32(bytes.data() + 8));
  msg.finished = bytes[12] != 0;
  const bool has_payload = bytes[13] != 0;
  if (has_payload) {
    std::string body(bytes.begin() + 14, bytes.end());
    std::istringstream ss(body);
    std::vector<std::vector<int>> routes;
    std::string line;
    while (std::getline(ss, line)) {
      std::istringstream ls(line);
      std::vector<int> ids;
      int id;
      while (ls >> id) ids.push_back(id);
      if (!ids.empty()) routes.push_back(std::move(ids));
    }
    msg.payload = std::move(routes);
  }
  return msg;
}

void Channel::push(CooperationMessage msg) {
  std::lock_guard<std::mutex> lock(mu_);
  if (queue_.size() >= capacity_) queue_.pop_front();
  queue_.push_back(std::move(msg));
}

std::vector<CooperationMessage> Channel::drain() {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<CooperationMessage> out(queue_.begin(), queue_.end());
  queue_.clear();
  return out;
}

std::size_t Channel::pending() const {
  std::lock_guard<std::mutex> lock(mu_);
  return queue_.size();
}

std::string LogRecord::to_line() const {
  std::ostringstream ss;
  ss << "t=" << t_seconds << " sender=" << sender << " routes=" << route_count
     << " finished=" << (finished ? 1 : 0)
     << " payload=" << (has_payload ? 1 : 0) << " units=" << payload_units;
  return ss.str();
}

void MessageLog::append(const CooperationMessage& msg) {
  LogRecord rec;
  rec.t_seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start_)
                      .count();
  rec.sender = msg.sender;
  rec.route_count = msg.route_count;
  rec.finished = msg.finished;
  rec.has_payload = msg.payload.has_value();
  rec.payload_units = msg.payload_units();
  std::lock_guard<std::mutex> lock(mu_);
  records_.push_back(rec);
}

std::vector<LogRecord> MessageLog::records() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_;
}

void MessageLog::write(std::ostream& out) const {
  for (const LogRecord& rec : records()) out << rec.to_line() << "\n";
}

bool RingWorker::cooperate(
    int route_count,
    const std::function<std::vector<std::vector<int>>()>& snapshot,
    bool local_finished) {
  if (counters_) ++counters_->coop_calls;
  if (topo_.p == 1) return local_finished;  // degenerate ring: no-op

  const bool improved = route_count < last_sent_rc_;
  const bool fin = local_finished || observed_finished_;
  const bool announce = fin && !finished_announced_;
  if (improved || announce) {
    CooperationMessage msg;
    msg.sender = index_;
    msg.route_count = route_count;
    msg.finished = fin;
    if (improved) msg.payload = snapshot();
    if (counters_) counters_->coop_payload_units += msg.payload_units();
    if (log_) log_->append(msg);
    out_->push(std::move(msg));
    if (improved) last_sent_rc_ = route_count;
    if (fin) finished_announced_ = true;
  }

  for (CooperationMessage& msg : in_->drain()) {
    if (counters_) counters_->coop_payload_units += msg.payload_units();
    if (msg.finished) observed_finished_ = true;
    if (msg.payload && msg.route_count < incoming_rc_) {
      incoming_rc_ = msg.route_count;
      incoming_ = std::move(*msg.payload);
    }
  }
  return observed_finished_ || local_finished;
}

std::optional<std::vector<std::vector<int>>> RingWorker::take_incoming(
    int current) {
  if (incoming_ && incoming_rc_ < current) {
    auto out = std::move(incoming_);
    incoming_.reset();
    incoming_rc_ = std::numeric_limits<int>::max();
    return out;
  }
  return std::nullopt;
}

void RingWorker::drain_until_finished(double watchdog_seconds,
                                      const std::function<bool()>& give_up) {
  if (topo_.p == 1) return;
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration<double>(watchdog_seconds);
  auto empty_snapshot = []() { return std::vector<std::vector<int>>{}; };
  while (!observed_finished_) {
    if (give_up && give_up()) return;
    cooperate(last_sent_rc_, empty_snapshot, true);
    if (observed_finished_) return;
    if (std::chrono::steady_clock::now() > deadline) {
      throw WatchdogError("ring drain watchdog fired: " + state_dump());
    }
    std::this_thread::sleep_for(std::chrono::microseconds(100));
  }
}

std::string RingWorker::state_dump() const {
  std::ostringstream ss;
  ss << "worker=" << index_ << " p=" << topo_.p
     << " last_sent=" << last_sent_rc_
     << " announced=" << (finished_announced_ ? 1 : 0)
     << " observed=" << (observed_finished_ ? 1 : 0)
     << " inbox=" << in_->pending() << " outbox=" << out_->pending();
  return ss.str();
}

void run_ring(int p, const std::function<void(RingWorker&)>& body,
              MessageLog* log) {
  if (p < 1) throw std::invalid_argument("need at least one worker");
  RingTopology topo{p};
  std::deque<Channel> channels;
  for (int i = 0; i < p; ++i) channels.emplace_back();

  std::deque<RingWorker> workers;
  for (int i = 0; i < p; ++i) {
    workers.emplace_back(i, topo, &channels[i], &channels[topo.prev(i)], log);
  }

  std::vector<std::exception_ptr> errors(p);
  std::vector<std::thread> threads;
  threads.reserve(p);
  for (int i = 0; i < p; ++i) {
    threads.emplace_back([&, i] {
      try {
        body(workers[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

std::uint64_t worker_seed(std::uint64_t global_seed, int worker_index) {
  std::uint64_t z = global_seed + 0x9E3779B97F4A7C15ull *
                                      (static_cast<std::uint64_t>(worker_index) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

ParallelResult run_parallel(const Instance& inst, const GesConfig& config,
                            int p, const ParallelOptions& options) {
  if (p < 1) throw std::invalid_argument("need at least one worker");
  const auto t0 = std::chrono::steady_clock::now();
  const Solution initial = build_initial_solution(inst);

  ParallelResult result;
  result.workers.resize(p);
  std::atomic<bool> abort{false};

  run_ring(
      p,
      [&](RingWorker& ring) {
        const int i = ring.index();
        WorkerReport& report = result.workers[i];
        report.index = i;
        ring.attach_counters(&report.counters);

        Rng rng(worker_seed(config.rng_seed, i));
        Solution best = initial;
        const Solution& sigma_init = initial;

        auto elapsed = [&] {
          return std::chrono::duration<double>(
                     std::chrono::steady_clock::now() - t0)
              .count();
        };
        auto local_done = [&] {
          if (abort.load(std::memory_order_relaxed)) return true;
          if (best.route_count() == 0) return true;  // n = 0: nothing to do
          if (config.target_route_count &&
              best.route_count() <= *config.target_route_count) {
            return true;
          }
          if (config.time_limit_seconds &&
              elapsed() >= *config.time_limit_seconds) {
            return true;
          }
          if (config.z1_cap && report.attempts >= *config.z1_cap) return true;
          return false;
        };
        auto snapshot = [&] { return best.route_visit_lists(); };
        auto hook = [&]() -> bool {
          const bool fin = ring.cooperate(best.route_count(), snapshot,
                                          local_done());
          if (auto incoming = ring.take_incoming(best.route_count())) {
            best = solution_from_routes(*incoming, inst);
          }
          return fin;
        };

        try {
          bool finished = local_done();
          while (!finished) {
            AttemptResult attempt = minimize_routes_once(
                best, report.counters, config, inst, rng, hook);
            ++report.attempts;
            if (attempt.success &&
                attempt.solution.route_count() < best.route_count()) {
              best = std::move(attempt.solution);
            } else if (!attempt.success && config.literal_line31) {
              best = sigma_init;
            }
            finished = hook() || local_done();
          }
          ring.cooperate(best.route_count(), snapshot, true);
          ring.drain_until_finished(
              options.watchdog_seconds,
              [&] { return abort.load(std::memory_order_relaxed); });
          if (auto incoming = ring.take_incoming(best.route_count())) {
            best = solution_from_routes(*incoming, inst);
          }
          report.best = std::move(best);
        } catch (...) {
          abort.store(true, std::memory_order_relaxed);
          throw;
        }
      },
      options.log);

  int best_idx = 0;
  for (int i = 1; i < p; ++i) {
    if (result.workers[i].best.route_count() <
        result.workers[best_idx].best.route_count()) {
      best_idx = i;
    }
  }
  result.best = result.workers[best_idx].best;
  result.best_worker = best_idx;
  for (const WorkerReport& rep : result.workers) result.total += rep.counters;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

}  // namespace pges
