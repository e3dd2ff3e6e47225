#include "pges/ges.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pges {

namespace {

int uniform_index(Rng& rng, int count) {
  return std::uniform_int_distribution<int>(0, count - 1)(rng);
}

double total_violation(const Solution& sol) {
  double f = 0.0;
  for (const Route& r : sol.routes) f += r.violations().total();
  return f;
}

// out = base with `pick` before base[i] and `deli` before base[j], i <= j.
void insert_pair_into(std::vector<int>& out, const std::vector<int>& base,
                      int i, int j, int pick, int deli) {
  out.clear();
  out.reserve(base.size() + 2);
  out.insert(out.end(), base.begin(), base.begin() + i);
  out.push_back(pick);
  out.insert(out.end(), base.begin() + i, base.begin() + j);
  out.push_back(deli);
  out.insert(out.end(), base.begin() + j, base.end());
}

void remove_request_from(std::vector<int>& out, const std::vector<int>& base,
                         const Request& req) {
  out.clear();
  out.reserve(base.size());
  for (int id : base) {
    if (id != req.pickup && id != req.delivery) out.push_back(id);
  }
}

// Moves a served request onto routes[to] at the given slots. Drops the
// source route when it empties (shifting later route indices down).
void materialize_relocate(Solution& sol, const Request& req, int to,
                          int pickup_slot, int delivery_slot,
                          const Instance& inst) {
  const int from = sol.route_of(req.id);
  Route& src = sol.routes[from];
  std::erase_if(src.visits,
                [&](int id) { return id == req.pickup || id == req.delivery; });
  Route& dst = sol.routes[to];
  dst.visits.insert(dst.visits.begin() + delivery_slot, req.delivery);
  dst.visits.insert(dst.visits.begin() + pickup_slot, req.pickup);
  recompute_caches(dst, inst);
  sol.assignment[req.id] = to;
  if (src.empty()) {
    sol.routes.erase(sol.routes.begin() + from);
    for (int& a : sol.assignment) {
      if (a != kUnserved && a > from) --a;
    }
  } else {
    recompute_caches(src, inst);
  }
}

}  // namespace

Solution build_initial_solution(const Instance& inst) {
  Solution sol = empty_solution(inst);
  sol.routes.reserve(inst.n());
  for (const Request& req : inst.requests()) {
    Route r = make_route({req.pickup, req.delivery}, inst);
    if (!r.feasible) {
      throw UnsolvableError(
          req.id, "instance unsolvable: request " + std::to_string(req.id) +
                      " cannot be served by a dedicated vehicle");
    }
    sol.assignment[req.id] = sol.route_count();
    sol.routes.push_back(std::move(r));
  }
  return sol;
}

int select_route_for_removal(const Solution& sol, Rng& rng) {
  if (sol.route_count() == 0) {
    throw std::invalid_argument("cannot select a route from an empty solution");
  }
  return uniform_index(rng, sol.route_count());
}

std::vector<InsertionCandidate> feasible_insertions(const Request& h_in,
                                                    const Solution& sol,
                                                    const Instance& inst,
                                                    OpCounters& counters) {
  std::vector<InsertionCandidate> out;
  for (int r = 0; r < sol.route_count(); ++r) {
    const Route& route = sol.routes[r];
    const int m = route.size();
    for (int i = 0; i <= m; ++i) {
      for (int j = i; j <= m; ++j) {
        if (insertion_feasible(route, h_in, i, j, inst,
                               &counters.insertion_tests)) {
          out.push_back({r, i, j});
        }
      }
    }
  }
  return out;
}

SqueezeResult squeeze(const Request& h_in, const Solution& sol,
                      const Instance& inst, Rng&, OpCounters& counters) {
  if (sol.route_count() == 0) return {sol, false};
  constexpr double kEps = 1e-9;
  const std::uint64_t n = static_cast<std::uint64_t>(inst.n());
  std::uint64_t budget = std::max<std::uint64_t>(200'000, 8 * n * n);
  auto spend = [&](std::uint64_t units) {
    counters.squeeze_move_evals += units;
    if (units >= budget) {
      budget = 0;
      return false;
    }
    budget -= units;
    return true;
  };

  std::vector<int> tmp;

  // Initial insertion: position with the smallest violation increase.
  double best_delta = std::numeric_limits<double>::infinity();
  int best_route = -1, best_i = 0, best_j = 0;
  for (int r = 0; r < sol.route_count(); ++r) {
    const Route& route = sol.routes[r];
    const double base = route.violations().total();
    const int m = route.size();
    for (int i = 0; i <= m; ++i) {
      for (int j = i; j <= m; ++j) {
        insert_pair_into(tmp, route.visits, i, j, h_in.pickup, h_in.delivery);
        spend(1);
        const double delta = simulate_violations(tmp, inst).total() - base;
        if (delta < best_delta) {
          best_delta = delta;
          best_route = r;
          best_i = i;
          best_j = j;
        }
      }
    }
  }

  Solution work = sol;
  work.insert_request(h_in, best_route, best_i, best_j, inst);

  // Repair loop: out-relocate first, out-exchange only when relocates fail.
  // First violation-reducing move wins each round.
  while (budget > 0) {
    if (total_violation(work) <= 0.0) return {std::move(work), true};

    bool accepted = false;

    // Out-relocate onto feasible positions (O(1) probes).
    for (int vr = 0; vr < work.route_count() && !accepted; ++vr) {
      if (work.routes[vr].feasible) continue;
      const double viol_src = work.routes[vr].violations().total();
      for (int a_id : work.route_requests(vr, inst)) {
        if (accepted) break;
        const Request& a = inst.request(a_id);
        remove_request_from(tmp, work.routes[vr].visits, a);
        if (!spend(1)) break;
        const double gain = simulate_violations(tmp, inst).total() - viol_src;
        if (gain >= -kEps) continue;
        for (int t = 0; t < work.route_count() && !accepted; ++t) {
          if (t == vr || !work.routes[t].feasible) continue;
          const Route& target = work.routes[t];
          const int m = target.size();
          for (int i = 0; i <= m && !accepted; ++i) {
            for (int j = i; j <= m; ++j) {
              if (!spend(1)) return {sol, false};
              if (insertion_feasible(target, a, i, j, inst, nullptr)) {
                materialize_relocate(work, a, t, i, j, inst);
                accepted = true;
                break;
              }
            }
          }
        }
      }
    }
    if (accepted) continue;

    // Out-relocate onto violation-reducing positions (full simulation).
    for (int vr = 0; vr < work.route_count() && !accepted; ++vr) {
      if (work.routes[vr].feasible) continue;
      const double viol_src = work.routes[vr].violations().total();
      for (int a_id : work.route_requests(vr, inst)) {
        if (accepted) break;
        const Request& a = inst.request(a_id);
        std::vector<int> reduced;
        remove_request_from(reduced, work.routes[vr].visits, a);
        if (!spend(1)) return {sol, false};
        const double gain = simulate_violations(reduced, inst).total() - viol_src;
        for (int t = 0; t < work.route_count() && !accepted; ++t) {
          if (t == vr) continue;
          const Route& target = work.routes[t];
          const double viol_t = target.violations().total();
          const int m = target.size();
          for (int i = 0; i <= m && !accepted; ++i) {
            for (int j = i; j <= m; ++j) {
              insert_pair_into(tmp, target.visits, i, j, a.pickup, a.delivery);
              if (!spend(1)) return {sol, false};
              const double delta_t =
                  simulate_violations(tmp, inst).total() - viol_t;
              if (gain + delta_t < -kEps) {
                materialize_relocate(work, a, t, i, j, inst);
                accepted = true;
                break;
              }
            }
          }
        }
      }
    }
    if (accepted) continue;

    // Out-exchange: swap two requests between routes, both reinsertions at
    // their violation-minimizing positions.
    for (int vr = 0; vr < work.route_count() && !accepted; ++vr) {
      if (work.routes[vr].feasible) continue;
      const double viol_a_src = work.routes[vr].violations().total();
      for (int a_id : work.route_requests(vr, inst)) {
        if (accepted) break;
        const Request& a = inst.request(a_id);
        std::vector<int> a_removed;
        remove_request_from(a_removed, work.routes[vr].visits, a);
        for (int t = 0; t < work.route_count() && !accepted; ++t) {
          if (t == vr) continue;
          const double viol_b_src = work.routes[t].violations().total();
          for (int b_id : work.route_requests(t, inst)) {
            if (accepted) break;
            const Request& b = inst.request(b_id);
            std::vector<int> b_removed;
            remove_request_from(b_removed, work.routes[t].visits, b);

            // Best placement of b inside vr (minus a) and a inside t
            // (minus b).
            double best_b = std::numeric_limits<double>::infinity();
            int bi = -1, bj = -1;
            for (int i = 0; i <= static_cast<int>(a_removed.size()); ++i) {
              for (int j = i; j <= static_cast<int>(a_removed.size()); ++j) {
                insert_pair_into(tmp, a_removed, i, j, b.pickup, b.delivery);
                if (!spend(1)) return {sol, false};
                const double v = simulate_violations(tmp, inst).total();
                if (v < best_b) {
                  best_b = v;
                  bi = i;
                  bj = j;
                }
              }
            }
            double best_a = std::numeric_limits<double>::infinity();
            int ai = -1, aj = -1;
            for (int i = 0; i <= static_cast<int>(b_removed.size()); ++i) {
              for (int j = i; j <= static_cast<int>(b_removed.size()); ++j) {
                insert_pair_into(tmp, b_removed, i, j, a.pickup, a.delivery);
                if (!spend(1)) return {sol, false};
                const double v = simulate_violations(tmp, inst).total();
                if (v < best_a) {
                  best_a = v;
                  ai = i;
                  aj = j;
                }
              }
            }
            const double delta =
                (best_b + best_a) - (viol_a_src + viol_b_src);
            if (delta < -kEps) {
              insert_pair_into(tmp, a_removed, bi, bj, b.pickup, b.delivery);
              work.routes[vr].visits = tmp;
              recompute_caches(work.routes[vr], inst);
              insert_pair_into(tmp, b_removed, ai, aj, a.pickup, a.delivery);
              work.routes[t].visits = tmp;
              recompute_caches(work.routes[t], inst);
              work.assignment[a.id] = t;
              work.assignment[b.id] = vr;
              accepted = true;
            }
          }
        }
      }
    }
    if (!accepted) break;
  }
  return {sol, false};
}

std::optional<EjectionCandidate> ejection_search(const Request& h_in,
                                                 const Solution& sol,
                                                 const PenaltyCounters& p,
                                                 int k, const Instance& inst,
                                                 Rng& rng,
                                                 OpCounters& counters) {
  std::uint64_t& steps =
      counters.ejection_steps[std::min(k, OpCounters::kMaxTrackedK)];
  std::uint64_t best_psum = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t tie_count = 0;
  std::optional<EjectionCandidate> best;
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<int> chosen;
  std::vector<int> reduced;
  chosen.reserve(k);

  for (int route_idx = 0; route_idx < sol.route_count(); ++route_idx) {
    const Route& route = sol.routes[route_idx];
    const std::vector<int> reqs = sol.route_requests(route_idx, inst);
    const int t = static_cast<int>(reqs.size());
    if (t < k) continue;

    // Lexicographic DFS over k-subsets of the route's requests.
    auto descend = [&](auto&& self, int from, std::uint64_t psum) -> void {
      for (int idx = from; idx < t; ++idx) {
        ++steps;
        const std::uint64_t next_psum = psum + p[reqs[idx]];
        if (static_cast<int>(chosen.size()) + 1 < k) {
          // Completing this prefix adds at least one more counter, so == is
          // already hopeless.
          if (next_psum >= best_psum) continue;
          chosen.push_back(idx);
          self(self, idx + 1, next_psum);
          chosen.pop_back();
          continue;
        }
        if (next_psum > best_psum) continue;

        // Leaf: eject the chosen subset plus reqs[idx], then scan every
        // insertion of h_in into the reduced route (the last two levels of
        // the lexicographic tree).
        chosen.push_back(idx);
        reduced.clear();
        reduced.reserve(route.visits.size() - 2 * k);
        for (int id : route.visits) {
          bool drop = false;
          for (int c : chosen) {
            const Request& ejected = inst.request(reqs[c]);
            if (id == ejected.pickup || id == ejected.delivery) {
              drop = true;
              break;
            }
          }
          if (!drop) reduced.push_back(id);
        }
        Route rr = make_route(reduced, inst);
        if (rr.feasible) {
          const int m = rr.size();
          for (int i = 0; i <= m; ++i) {
            for (int j = i; j <= m; ++j) {
              ++steps;
              if (!insertion_feasible(rr, h_in, i, j, inst, nullptr)) continue;
              if (next_psum < best_psum) {
                best_psum = next_psum;
                tie_count = 0;
              }
              ++tie_count;
              if (unit(rng) * static_cast<double>(tie_count) < 1.0) {
                EjectionCandidate cand;
                cand.route = route_idx;
                cand.pickup_slot = i;
                cand.delivery_slot = j;
                cand.ejected.clear();
                for (int c : chosen) cand.ejected.push_back(reqs[c]);
                cand.p_sum = next_psum;
                best = std::move(cand);
              }
            }
          }
        }
        chosen.pop_back();
      }
    };
    descend(descend, 0, 0);
  }
  return best;
}

Solution perturb(Solution sol, int steps, const Instance& inst, Rng& rng,
                 OpCounters& counters) {
  std::vector<int> served;
  std::vector<int> reduced;
  for (int step = 0; step < steps; ++step) {
    if (sol.route_count() < 2) break;
    served.clear();
    for (int id = 1; id <= inst.n(); ++id) {
      if (sol.serves(id)) served.push_back(id);
    }
    if (served.empty()) break;

    const bool relocate = (rng() & 1) == 0;
    if (relocate) {
      const Request& a =
          inst.request(served[uniform_index(rng, static_cast<int>(served.size()))]);
      const int src = sol.route_of(a.id);
      int target = uniform_index(rng, sol.route_count() - 1);
      if (target >= src) ++target;

      const Route& dst = sol.routes[target];
      const int m = dst.size();
      std::vector<InsertionCandidate> spots;
      for (int i = 0; i <= m; ++i) {
        for (int j = i; j <= m; ++j) {
          if (insertion_feasible(dst, a, i, j, inst,
                                 &counters.perturb_move_evals)) {
            spots.push_back({target, i, j});
          }
        }
      }
      if (spots.empty()) continue;
      const InsertionCandidate& c =
          spots[uniform_index(rng, static_cast<int>(spots.size()))];
      materialize_relocate(sol, a, c.route, c.pickup_slot, c.delivery_slot,
                           inst);
    } else {
      // Pair-exchange: both reinsertions must be feasible.
      const Request& a =
          inst.request(served[uniform_index(rng, static_cast<int>(served.size()))]);
      const Request& b =
          inst.request(served[uniform_index(rng, static_cast<int>(served.size()))]);
      const int ra = sol.route_of(a.id);
      const int rb = sol.route_of(b.id);
      if (ra == rb) continue;

      remove_request_from(reduced, sol.routes[ra].visits, a);
      Route ra_red = make_route(reduced, inst);
      remove_request_from(reduced, sol.routes[rb].visits, b);
      Route rb_red = make_route(reduced, inst);
      if (!ra_red.feasible || !rb_red.feasible) continue;

      std::vector<InsertionCandidate> spots_b;
      for (int i = 0; i <= ra_red.size(); ++i) {
        for (int j = i; j <= ra_red.size(); ++j) {
          if (insertion_feasible(ra_red, b, i, j, inst,
                                 &counters.perturb_move_evals)) {
            spots_b.push_back({ra, i, j});
          }
        }
      }
      if (spots_b.empty()) continue;
      std::vector<InsertionCandidate> spots_a;
      for (int i = 0; i <= rb_red.size(); ++i) {
        for (int j = i; j <= rb_red.size(); ++j) {
          if (insertion_feasible(rb_red, a, i, j, inst,
                                 &counters.perturb_move_evals)) {
            spots_a.push_back({rb, i, j});
          }
        }
      }
      if (spots_a.empty()) continue;

      const InsertionCandidate& cb =
          spots_b[uniform_index(rng, static_cast<int>(spots_b.size()))];
      const InsertionCandidate& ca =
          spots_a[uniform_index(rng, static_cast<int>(spots_a.size()))];
      ra_red.visits.insert(ra_red.visits.begin() + cb.delivery_slot, b.delivery);
      ra_red.visits.insert(ra_red.visits.begin() + cb.pickup_slot, b.pickup);
      rb_red.visits.insert(rb_red.visits.begin() + ca.delivery_slot, a.delivery);
      rb_red.visits.insert(rb_red.visits.begin() + ca.pickup_slot, a.pickup);
      sol.routes[ra] = std::move(ra_red);
      sol.routes[rb] = std::move(rb_red);
      recompute_caches(sol.routes[ra], inst);
      recompute_caches(sol.routes[rb], inst);
      sol.assignment[a.id] = rb;
      sol.assignment[b.id] = ra;
    }
  }
  return sol;
}

namespace {

void apply_ejection(Solution& sol, const Request& h_in,
                    const EjectionCandidate& cand, const Instance& inst) {
  Route& r = sol.routes[cand.route];
  for (int req_id : cand.ejected) {
    const Request& req = inst.request(req_id);
    std::erase_if(r.visits, [&](int id) {
      return id == req.pickup || id == req.delivery;
    });
    sol.assignment[req_id] = kUnserved;
  }
  r.visits.insert(r.visits.begin() + cand.delivery_slot, h_in.delivery);
  r.visits.insert(r.visits.begin() + cand.pickup_slot, h_in.pickup);
  recompute_caches(r, inst);
  sol.assignment[h_in.id] = cand.route;
}

}  // namespace

AttemptResult minimize_routes_once(const Solution& input, OpCounters& counters,
                                   const GesConfig& config,
                                   const Instance& inst, Rng& rng,
                                   const CoopHook& coop_hook) {
  ++counters.outer_iterations;
  if (input.route_count() == 0) return {input, true};

  Solution sol = input;
  const int removed = select_route_for_removal(sol, rng);
  EjectionPool ep;
  for (int req_id : sol.remove_route(removed, inst)) ep.push(req_id);
  PenaltyCounters p(inst.n());

  std::uint64_t z2 = 0;
  bool finished = false;
  while (!ep.empty() && !finished) {
    if (config.z2_cap && z2 >= *config.z2_cap) break;
    ++z2;
    ++counters.inner_iterations;

    const int h_id = ep.pop();
    const Request& h_in = inst.request(h_id);

    bool served = false;
    const auto cands = feasible_insertions(h_in, sol, inst, counters);
    if (!cands.empty()) {
      const InsertionCandidate& c =
          cands[uniform_index(rng, static_cast<int>(cands.size()))];
      sol.insert_request(h_in, c.route, c.pickup_slot, c.delivery_slot, inst);
      served = true;
    } else {
      SqueezeResult sq = squeeze(h_in, sol, inst, rng, counters);
      served = sq.served;
      sol = std::move(sq.solution);
    }

    if (!served) {
      p.bump(h_id);
      bool ejected = false;
      for (int k = 1; k <= config.k_max && !ejected; ++k) {
        auto cand = ejection_search(h_in, sol, p, k, inst, rng, counters);
        if (cand) {
          apply_ejection(sol, h_in, *cand, inst);
          for (int req_id : cand->ejected) ep.push(req_id);
          ejected = true;
        }
      }
      if (!ejected) ep.push(h_id);  // keep served(sigma) + EP exhaustive
      sol = perturb(std::move(sol), config.perturb_steps, inst, rng, counters);
    }

    if (coop_hook) finished = coop_hook();
  }

  if (ep.empty()) return {std::move(sol), true};
  return {input, false};
}

}  // namespace pges
