#pragma once

#include <vector>

#include "pges/route.hpp"

namespace pges {

constexpr int kUnserved = -1;

// A set of routes plus the request -> route assignment. Empty routes are
// never stored, so route_count() == routes.size().
struct Solution {
  std::vector<Route> routes;
  // Indexed by request id; slot 0 unused. kUnserved when not on any route.
  std::vector<int> assignment;

  int route_count() const { return static_cast<int>(routes.size()); }
  bool serves(int request_id) const { return assignment[request_id] != kUnserved; }
  int route_of(int request_id) const { return assignment[request_id]; }

  // Inserts the request into routes[route_idx]: pickup before
  // visits[pickup_slot], delivery before visits[delivery_slot] (slots refer
  // to the route prior to insertion; the delivery lands after the pickup).
  void insert_request(const Request& req, int route_idx, int pickup_slot,
                      int delivery_slot, const Instance& inst);

  // Removes both points of the request. Drops the route when it empties.
  void eject_request(const Request& req, const Instance& inst);

  // Removes routes[route_idx] and returns its requests in route
  // (pickup-position) order.
  std::vector<int> remove_route(int route_idx, const Instance& inst);

  // Request ids of routes[route_idx] in pickup-position order.
  std::vector<int> route_requests(int route_idx, const Instance& inst) const;

  std::vector<std::vector<int>> route_visit_lists() const;
};

Solution empty_solution(const Instance& inst);

// Rebuilds a Solution from raw visit lists (e.g. a decoded cooperation
// payload or a parsed solution file). Caches are recomputed; feasibility is
// the caller's concern.
Solution solution_from_routes(const std::vector<std::vector<int>>& route_lists,
                              const Instance& inst);

}  // namespace pges
