#include "pges/route.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

namespace pges {

template <typename T>
void RangeTable<T>::build(const std::vector<T>& values) {
  size_ = static_cast<int>(values.size());
  min_levels_.clear();
  max_levels_.clear();
  if (size_ == 0) return;

  log2_.resize(size_ + 1);
  log2_[1] = 0;
  for (int i = 2; i <= size_; ++i) log2_[i] = log2_[i / 2] + 1;

  const int levels = log2_[size_] + 1;
  min_levels_.resize(levels);
  max_levels_.resize(levels);
  min_levels_[0] = values;
  max_levels_[0] = values;
  for (int lv = 1; lv < levels; ++lv) {
    const int span = 1 << lv;
    const int count = size_ - span + 1;
    min_levels_[lv].resize(count);
    max_levels_[lv].resize(count);
    for (int i = 0; i < count; ++i) {
      min_levels_[lv][i] = std::min(min_levels_[lv - 1][i],
                                    min_levels_[lv - 1][i + span / 2]);
      max_levels_[lv][i] = std::max(max_levels_[lv - 1][i],
                                    max_levels_[lv - 1][i + span / 2]);
    }
  }
}

template <typename T>
T RangeTable<T>::range_min(int lo, int hi) const {
  const int lv = log2_[hi - lo + 1];
  return std::min(min_levels_[lv][lo], min_levels_[lv][hi - (1 << lv) + 1]);
}

template <typename T>
T RangeTable<T>::range_max(int lo, int hi) const {
  const int lv = log2_[hi - lo + 1];
  return std::max(max_levels_[lv][lo], max_levels_[lv][hi - (1 << lv) + 1]);
}

template class RangeTable<double>;
template class RangeTable<int>;

ViolationSummary simulate_violations(const std::vector<int>& visits,
                                     const Instance& inst) {
  ViolationSummary out;
  const TravelPoint& depot = inst.depot();
  double departure = depot.tw_earliest + depot.service_time;
  int prev = kDepotId;
  long load = 0;
  const long cap = inst.capacity();
  for (int id : visits) {
    const TravelPoint& pt = inst.point(id);
    const double arrival = departure + inst.travel_time(prev, id);
    const double begin = std::max(pt.tw_earliest, arrival);
    if (begin > pt.tw_latest) out.tw += begin - pt.tw_latest;
    load += pt.demand;
    if (load > cap) out.cap += load - cap;
    if (load < 0) out.cap += -load;
    departure = begin + pt.service_time;
    prev = id;
  }
  const double back = departure + inst.travel_time(prev, kDepotId);
  if (back > depot.tw_latest) out.tw += back - depot.tw_latest;
  return out;
}

void recompute_caches(Route& route, const Instance& inst) {
  const int m = route.size();
  route.earliest_begin.resize(m);
  route.latest_begin.resize(m + 1);
  route.load_prefix.resize(m);
  route.cum_wait.resize(m);
  route.slack_gap.resize(m);

  const TravelPoint& depot = inst.depot();
  double departure = depot.tw_earliest + depot.service_time;
  int prev = kDepotId;
  double tw_viol = 0.0;
  long cap_viol = 0;
  long load = 0;
  double waited = 0.0;
  const long cap = inst.capacity();

  for (int k = 0; k < m; ++k) {
    const TravelPoint& pt = inst.point(route.visits[k]);
    const double arrival = departure + inst.travel_time(prev, pt.id);
    const double begin = std::max(pt.tw_earliest, arrival);
    if (begin > pt.tw_latest) tw_viol += begin - pt.tw_latest;
    waited += begin - arrival;
    load += pt.demand;
    if (load > cap) cap_viol += load - cap;
    if (load < 0) cap_viol += -load;

    route.earliest_begin[k] = begin;
    route.cum_wait[k] = waited;
    route.load_prefix[k] = static_cast<int>(load);
    route.slack_gap[k] = waited + (pt.tw_latest - begin);

    departure = begin + pt.service_time;
    prev = pt.id;
  }
  const double back = departure + inst.travel_time(prev, kDepotId);
  if (back > depot.tw_latest) tw_viol += back - depot.tw_latest;

  route.latest_begin[m] = depot.tw_latest;
  double next_latest = depot.tw_latest;
  int next_id = kDepotId;
  for (int k = m - 1; k >= 0; --k) {
    const TravelPoint& pt = inst.point(route.visits[k]);
    next_latest = std::min(pt.tw_latest,
                           next_latest - inst.travel_time(pt.id, next_id) -
                               pt.service_time);
    route.latest_begin[k] = next_latest;
    next_id = pt.id;
  }

  route.tw_violation = tw_viol;
  route.cap_violation = cap_viol;
  route.feasible = (tw_viol == 0.0 && cap_viol == 0);

  route.gap_table.build(route.slack_gap);
  route.load_table.build(route.load_prefix);
}

Route make_route(std::vector<int> visits, const Instance& inst) {
  Route r;
  r.visits = std::move(visits);
  recompute_caches(r, inst);
  return r;
}

bool insertion_feasible(const Route& route, const Request& req,
                        int pickup_slot, int delivery_slot,
                        const Instance& inst, std::uint64_t* op_sink) {
  const int m = route.size();
  if (pickup_slot < 0 || pickup_slot > delivery_slot || delivery_slot > m) {
    throw std::invalid_argument("insertion slots out of bounds");
  }
  if (op_sink) ++*op_sink;
  if (!route.feasible) return false;

  const TravelPoint& pick = inst.point(req.pickup);
  const TravelPoint& deli = inst.point(req.delivery);
  const TravelPoint& depot = inst.depot();
  const long cap = inst.capacity();
  const int i = pickup_slot;
  const int j = delivery_slot;

  // Load. Positions i..j-1 carry the picked-up demand.
  const long before = (i > 0) ? route.load_prefix[i - 1] : 0;
  if (j == i) {
    const long after_pick = before + pick.demand;
    if (after_pick < 0 || after_pick > cap) return false;
    const long after_deli = after_pick + deli.demand;
    if (after_deli < 0 || after_deli > cap) return false;
  } else {
    long lo = before;
    long hi = before;
    lo = std::min<long>(lo, route.load_table.range_min(i, j - 1));
    hi = std::max<long>(hi, route.load_table.range_max(i, j - 1));
    if (hi + pick.demand > cap || lo + pick.demand < 0) return false;
    const long after_deli = route.load_prefix[j - 1] + pick.demand + deli.demand;
    if (after_deli < 0 || after_deli > cap) return false;
  }

  // Time. dep_u = departure from the pickup's predecessor.
  const int u = (i > 0) ? route.visits[i - 1] : kDepotId;
  const double dep_u = (i > 0)
                           ? route.earliest_begin[i - 1] +
                                 inst.point(u).service_time
                           : depot.tw_earliest + depot.service_time;
  const double begin_pick =
      std::max(pick.tw_earliest, dep_u + inst.travel_time(u, req.pickup));
  if (begin_pick > pick.tw_latest) return false;

  if (j == i) {
    const double begin_deli =
        std::max(deli.tw_earliest, begin_pick + pick.service_time +
                                       inst.travel_time(req.pickup, req.delivery));
    if (begin_deli > deli.tw_latest) return false;
    const int w = (i < m) ? route.visits[i] : kDepotId;
    const double arr_w =
        begin_deli + deli.service_time + inst.travel_time(req.delivery, w);
    return arr_w <= route.latest_begin[i];
  }

  // Split insertion: the pickup pushes positions i..j-1; waiting along the
  // way absorbs the push additively.
  const double arr_i = begin_pick + pick.service_time +
                       inst.travel_time(req.pickup, route.visits[i]);
  const double push = std::max(0.0, arr_i - route.earliest_begin[i]);
  if (push > 0.0) {
    const double gap_min = route.gap_table.range_min(i, j - 1);
    if (push > gap_min - route.cum_wait[i]) return false;
  }

  const double absorbed =
      (j - 1 > i) ? (route.cum_wait[j - 1] - route.cum_wait[i]) : 0.0;
  const double begin_prev =
      route.earliest_begin[j - 1] + std::max(0.0, push - absorbed);
  const int v_prev = route.visits[j - 1];
  const double begin_deli =
      std::max(deli.tw_earliest, begin_prev + inst.point(v_prev).service_time +
                                     inst.travel_time(v_prev, req.delivery));
  if (begin_deli > deli.tw_latest) return false;

  const int w = (j < m) ? route.visits[j] : kDepotId;
  const double arr_w =
      begin_deli + deli.service_time + inst.travel_time(req.delivery, w);
  return arr_w <= route.latest_begin[j];
}

bool brute_force_feasible(const std::vector<int>& visits,
                          const Instance& inst) {
  // Precedence: delivery strictly after its pickup when both are present.
  for (int pos = 0; pos < static_cast<int>(visits.size()); ++pos) {
    const TravelPoint& pt = inst.point(visits[pos]);
    if (pt.demand >= 0) continue;  // deliveries only
    bool pickup_seen = false;
    for (int q = 0; q < pos; ++q) {
      if (visits[q] == pt.partner_id) {
        pickup_seen = true;
        break;
      }
    }
    bool pickup_present = pickup_seen;
    if (!pickup_seen) {
      for (int q = pos + 1; q < static_cast<int>(visits.size()); ++q) {
        if (visits[q] == pt.partner_id) {
          pickup_present = true;
          break;
        }
      }
    }
    if (pickup_present && !pickup_seen) return false;
  }
  return simulate_violations(visits, inst).feasible();
}

}  // namespace pges
