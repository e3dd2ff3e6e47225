#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "pges/counters.hpp"
#include "pges/instance.hpp"
#include "pges/solution.hpp"

namespace pges {

using Rng = std::mt19937_64;

// Stack of currently unserved requests. A request is never simultaneously
// in the pool and served by the working solution.
class EjectionPool {
 public:
  bool empty() const { return stack_.empty(); }
  int size() const { return static_cast<int>(stack_.size()); }
  void push(int request_id) { stack_.push_back(request_id); }
  int pop() {
    const int id = stack_.back();
    stack_.pop_back();
    return id;
  }
  const std::vector<int>& contents() const { return stack_; }

 private:
  std::vector<int> stack_;
};

// p[h]: per-request difficulty counters driving ejection selection.
class PenaltyCounters {
 public:
  explicit PenaltyCounters(int n) : p_(n + 1, 1) {}
  void reset_all() { std::fill(p_.begin(), p_.end(), 1); }
  void bump(int request_id) { ++p_[request_id]; }
  std::uint32_t operator[](int request_id) const { return p_[request_id]; }

 private:
  std::vector<std::uint32_t> p_;
};

struct InsertionCandidate {
  int route = 0;
  int pickup_slot = 0;
  int delivery_slot = 0;
};

struct EjectionCandidate {
  int route = 0;
  int pickup_slot = 0;    // slots in the route *after* ejection
  int delivery_slot = 0;
  std::vector<int> ejected;  // request ids, route order
  std::uint64_t p_sum = 0;
};

struct GesConfig {
  int k_max = 3;
  int perturb_steps = 100;  // I
  std::optional<std::uint64_t> z1_cap;  // outer-iteration cap
  std::optional<std::uint64_t> z2_cap;  // inner-iteration cap per attempt
  std::optional<double> time_limit_seconds;
  std::optional<int> target_route_count;
  std::uint64_t rng_seed = 1;
  // Fidelity toggle: on a failed attempt restore the *initial* solution as
  // the incumbent instead of keeping the best found so far.
  bool literal_line31 = false;
};

class UnsolvableError : public std::runtime_error {
 public:
  UnsolvableError(int request_id, const std::string& what)
      : std::runtime_error(what), request_id_(request_id) {}
  int request_id() const { return request_id_; }

 private:
  int request_id_ = 0;
};

// One route per request. Rejects the instance when any single-request route
// is infeasible (no solution can exist then). Linear in n.
Solution build_initial_solution(const Instance& inst);

// Uniformly random route index.
int select_route_for_removal(const Solution& sol, Rng& rng);

// Every (route, pickup_slot, delivery_slot) triple that keeps the solution
// feasible; at most c*n^2 feasibility tests, each O(1).
std::vector<InsertionCandidate> feasible_insertions(const Request& h_in,
                                                    const Solution& sol,
                                                    const Instance& inst,
                                                    OpCounters& counters);

struct SqueezeResult {
  Solution solution;
  bool served = false;
};

// Inserts h_in at the violation-minimizing position, then repairs with
// out-relocate moves, falling back to out-exchange only when no improving
// relocate exists. First improving move wins each round. On failure the
// original solution comes back unchanged.
SqueezeResult squeeze(const Request& h_in, const Solution& sol,
                      const Instance& inst, Rng& rng, OpCounters& counters);

// Minimum-p_sum way of ejecting exactly k requests from one route so that
// h_in fits feasibly. Lexicographic enumeration with pruning; ties broken
// uniformly at random.
std::optional<EjectionCandidate> ejection_search(const Request& h_in,
                                                 const Solution& sol,
                                                 const PenaltyCounters& p,
                                                 int k, const Instance& inst,
                                                 Rng& rng,
                                                 OpCounters& counters);

// I random feasibility-preserving moves (pair-relocate / pair-exchange).
Solution perturb(Solution sol, int steps, const Instance& inst, Rng& rng,
                 OpCounters& counters);

// Called once per inner iteration; returns true when the worker should
// stop (cooperation observed a finished flag or a local condition fired).
using CoopHook = std::function<bool()>;

struct AttemptResult {
  Solution solution;
  bool success = false;
};

// One outer iteration: removes a random route into the ejection pool and
// tries to re-serve everything. On success the returned solution has one
// route less; on abort (inner cap or finished signal) the input solution
// comes back unchanged.
AttemptResult minimize_routes_once(const Solution& sol, OpCounters& counters,
                                   const GesConfig& config,
                                   const Instance& inst, Rng& rng,
                                   const CoopHook& coop_hook);

}  // namespace pges
