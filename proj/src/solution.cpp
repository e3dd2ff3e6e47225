#include "pges/solution.hpp"

#include <algorithm>
#include <stdexcept>

namespace pges {

void Solution::insert_request(const Request& req, int route_idx,
                              int pickup_slot, int delivery_slot,
                              const Instance& inst) {
  Route& r = routes[route_idx];
  // Delivery first so the pickup insertion does not shift its slot.
  r.visits.insert(r.visits.begin() + delivery_slot, req.delivery);
  r.visits.insert(r.visits.begin() + pickup_slot, req.pickup);
  recompute_caches(r, inst);
  assignment[req.id] = route_idx;
}

void Solution::eject_request(const Request& req, const Instance& inst) {
  const int route_idx = assignment[req.id];
  if (route_idx == kUnserved) {
    throw std::logic_error("ejecting a request that is not served");
  }
  Route& r = routes[route_idx];
  std::erase_if(r.visits,
                [&](int id) { return id == req.pickup || id == req.delivery; });
  assignment[req.id] = kUnserved;
  if (r.empty()) {
    routes.erase(routes.begin() + route_idx);
    for (int& a : assignment) {
      if (a != kUnserved && a > route_idx) --a;
    }
  } else {
    recompute_caches(r, inst);
  }
}

std::vector<int> Solution::remove_route(int route_idx, const Instance& inst) {
  std::vector<int> reqs = route_requests(route_idx, inst);
  routes.erase(routes.begin() + route_idx);
  for (int id : reqs) assignment[id] = kUnserved;
  for (int& a : assignment) {
    if (a != kUnserved && a > route_idx) --a;
  }
  return reqs;
}

std::vector<int> Solution::route_requests(int route_idx,
                                          const Instance& inst) const {
  std::vector<int> reqs;
  for (int id : routes[route_idx].visits) {
    const int req = inst.request_of(id);
    if (inst.request(req).pickup == id) reqs.push_back(req);
  }
  return reqs;
}

std::vector<std::vector<int>> Solution::route_visit_lists() const {
  std::vector<std::vector<int>> lists;
  lists.reserve(routes.size());
  for (const Route& r : routes) lists.push_back(r.visits);
  return lists;
}

Solution empty_solution(const Instance& inst) {
  Solution s;
  s.assignment.assign(inst.n() + 1, kUnserved);
  return s;
}

Solution solution_from_routes(const std::vector<std::vector<int>>& route_lists,
                              const Instance& inst) {
  Solution s = empty_solution(inst);
  for (const auto& visits : route_lists) {
    if (visits.empty()) continue;
    s.routes.push_back(make_route(visits, inst));
  }
  for (int r = 0; r < s.route_count(); ++r) {
    for (int id : s.routes[r].visits) {
      s.assignment[inst.request_of(id)] = r;
    }
  }
  return s;
}

}  // namespace pges
