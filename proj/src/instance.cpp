#include "pges/instance.hpp"

#include <stdexcept>
#include <utility>

namespace pges {

Instance::Instance(std::string name, std::vector<TravelPoint> points,
                   int capacity, int vehicle_count_hint)
    : name_(std::move(name)),
      points_(std::move(points)),
      capacity_(capacity),
      vehicle_count_hint_(vehicle_count_hint) {
  if (points_.empty()) {
    throw std::invalid_argument("instance has no depot row");
  }
  if (capacity_ < 0) {
    throw std::invalid_argument("negative vehicle capacity");
  }
  const TravelPoint& depot = points_[kDepotId];
  if (depot.demand != 0 || depot.partner_id != kNoPartner) {
    throw std::invalid_argument("depot must have zero demand and no partner");
  }
  for (int i = 0; i < static_cast<int>(points_.size()); ++i) {
    const TravelPoint& pt = points_[i];
    if (pt.id != i) {
      throw std::invalid_argument("point ids must be dense and ordered");
    }
    if (pt.tw_earliest > pt.tw_latest) {
      throw std::invalid_argument("time window closes before it opens at point " +
                                  std::to_string(i));
    }
  }

  request_of_.assign(points_.size(), 0);
  for (const TravelPoint& pt : points_) {
    if (pt.id == kDepotId) continue;
    if (pt.partner_id <= 0 || pt.partner_id >= static_cast<int>(points_.size()) ||
        pt.partner_id == pt.id) {
      throw std::invalid_argument("dangling partner reference at point " +
                                  std::to_string(pt.id));
    }
    const TravelPoint& partner = points_[pt.partner_id];
    if (partner.partner_id != pt.id) {
      throw std::invalid_argument("partner links not mutual at point " +
                                  std::to_string(pt.id));
    }
    if (pt.demand + partner.demand != 0 || pt.demand == 0) {
      throw std::invalid_argument("demand-sign mismatch for pair " +
                                  std::to_string(pt.id) + "/" +
                                  std::to_string(pt.partner_id));
    }
  }

  // Pickup rows create the requests, in pickup-id order, so request
  // numbering is deterministic.
  for (const TravelPoint& pt : points_) {
    if (pt.id == kDepotId || pt.demand <= 0) continue;
    Request req;
    req.id = static_cast<int>(requests_.size()) + 1;
    req.pickup = pt.id;
    req.delivery = pt.partner_id;
    requests_.push_back(req);
    request_of_[req.pickup] = req.id;
    request_of_[req.delivery] = req.id;
  }

  if (points_.size() != 2 * requests_.size() + 1) {
    throw std::invalid_argument("point/request count mismatch");
  }
}

}  // namespace pges
