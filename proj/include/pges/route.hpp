#pragma once

#include <cstdint>
#include <vector>

#include "pges/instance.hpp"

namespace pges {

// Static range-min/max over a fixed array (rebuilt with the route caches).
// Gives O(1) inclusive-range queries for the pair-insertion test.
template <typename T>
class RangeTable {
 public:
  void build(const std::vector<T>& values);
  // min/max over values[lo..hi], inclusive. Caller guarantees lo <= hi.
  T range_min(int lo, int hi) const;
  T range_max(int lo, int hi) const;
  bool empty() const { return size_ == 0; }

 private:
  std::vector<std::vector<T>> min_levels_;
  std::vector<std::vector<T>> max_levels_;
  std::vector<int> log2_;
  int size_ = 0;
};

struct ViolationSummary {
  double tw = 0.0;   // sum of service-begin lateness over all positions
  long cap = 0;      // sum of load excursions outside [0, capacity]
  bool feasible() const { return tw == 0.0 && cap == 0; }
  double total() const { return tw + static_cast<double>(cap); }
};

// Simulates a visit sequence from the depot and back, waiting permitted.
// Service-begin times are not clamped to the window: lateness accumulates
// into tw and propagates downstream.
ViolationSummary simulate_violations(const std::vector<int>& visits,
                                     const Instance& inst);

// One vehicle route. `visits` holds point ids; the depot is implicit at
// both ends. The caches make a single pair-insertion feasibility test O(1):
//   earliest_begin[k]  earliest service begin at position k
//   latest_begin[k]    latest begin keeping the suffix and depot return
//                      feasible (size m+1; slot m is the return deadline)
//   load_prefix[k]     cumulative demand through position k
//   cum_wait[k]        cumulative waiting through position k
//   slack_gap[k]       cum_wait[k] + (window close - earliest_begin[k]);
//                      a pickup push P inserted before position i keeps
//                      positions i..j within their windows iff
//                      P <= min slack_gap[i..j] - cum_wait[i]
struct Route {
  std::vector<int> visits;

  std::vector<double> earliest_begin;
  std::vector<double> latest_begin;
  std::vector<int> load_prefix;
  std::vector<double> cum_wait;
  std::vector<double> slack_gap;
  RangeTable<double> gap_table;
  RangeTable<int> load_table;

  bool feasible = true;
  double tw_violation = 0.0;
  long cap_violation = 0;

  int size() const { return static_cast<int>(visits.size()); }
  bool empty() const { return visits.empty(); }
  ViolationSummary violations() const { return {tw_violation, cap_violation}; }

  int request_count() const { return size() / 2; }
};

// Rebuilds every cache from `visits`. Infeasibility is recorded in the
// flags, never thrown.
void recompute_caches(Route& route, const Instance& inst);

Route make_route(std::vector<int> visits, const Instance& inst);

// True iff inserting req.pickup at slot `pickup_slot` and req.delivery at
// slot `delivery_slot` (slot s = before visits[s]; slots run 0..m) keeps
// the route time-window and capacity feasible. Constant-time: reads the
// caches plus O(1) arithmetic; never rescans the route. Each call adds one
// unit to *op_sink when provided, which is how the profiler observes the
// O(1) contract.
//
// Requires 0 <= pickup_slot <= delivery_slot <= m (throws otherwise) and
// valid caches. Returns false on routes already marked infeasible.
bool insertion_feasible(const Route& route, const Request& req,
                        int pickup_slot, int delivery_slot,
                        const Instance& inst,
                        std::uint64_t* op_sink = nullptr);

// Test oracle: full simulation of an arbitrary visit sequence. True iff
// every visit begins within its window, the load stays in [0, capacity],
// pickups precede deliveries, and the vehicle returns to the depot in time.
bool brute_force_feasible(const std::vector<int>& visits, const Instance& inst);

}  // namespace pges
