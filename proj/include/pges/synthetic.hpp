#pragma once

#include <cstdint>
#include <iosfwd>

#include "pges/instance.hpp"

namespace pges {

// Seeded generator of benchmark-style PDPTW instances. Geometry follows
// the classic families: clustered customers, uniform-random customers, or
// a half/half mix. Every generated request is feasible on a dedicated
// vehicle by construction, so the one-route-per-request start always
// exists.
//
// Zero-valued knobs are derived from n: capacity grows ~ sqrt(n) so
// vehicles hold more requests on bigger instances (routes lengthen the way
// the scaled benchmark sets do), and the horizon grows to fit such routes.
struct SyntheticSpec {
  enum class Style { kClustered, kRandom, kMixed };

  int n_requests = 50;
  Style style = Style::kMixed;
  std::uint64_t seed = 1;

  int capacity = 0;     // 0: max(60, 13 * sqrt(n))
  int horizon = 0;      // 0: derived from target route duration
  int area = 100;       // square side
  int service_time = 10;
  int demand_min = 5;
  int demand_max = 25;
  int width_min = 60;   // time-window width range
  int width_max = 160;
};

Instance make_synthetic_instance(const SyntheticSpec& spec);

// Emits the instance in the benchmark file format (all fields integral).
void write_instance_file(const Instance& inst, int vehicles_hint,
                         std::ostream& out);

}  // namespace pges
