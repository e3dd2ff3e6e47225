#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace pges {

constexpr int kDepotId = 0;
constexpr int kNoPartner = 0;  // sibling field value used by depot rows

// One row of the instance: depot, pickup or delivery location.
struct TravelPoint {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  int demand = 0;  // > 0 pickup, < 0 delivery, 0 depot
  double tw_earliest = 0.0;
  double tw_latest = 0.0;
  double service_time = 0.0;
  int partner_id = kNoPartner;  // paired point id; kNoPartner for the depot
};

// A transportation request: pickup point + delivery point, both served by
// the same vehicle with pickup first.
struct Request {
  int id = 0;  // 1..n
  int pickup = 0;
  int delivery = 0;
};

// Immutable PDPTW problem. Point 0 is the depot; every other point belongs
// to exactly one request, so points.size() == 2n + 1.
class Instance {
 public:
  Instance(std::string name, std::vector<TravelPoint> points, int capacity,
           int vehicle_count_hint = 0);

  const std::string& name() const { return name_; }
  int capacity() const { return capacity_; }
  // Vehicle count from the file header. Parsed as metadata only: the solver
  // treats fleet size as the decision variable.
  int vehicle_count_hint() const { return vehicle_count_hint_; }

  int n() const { return static_cast<int>(requests_.size()); }
  int point_count() const { return static_cast<int>(points_.size()); }

  const std::vector<TravelPoint>& points() const { return points_; }
  const TravelPoint& point(int id) const { return points_[id]; }
  const TravelPoint& depot() const { return points_[kDepotId]; }

  const std::vector<Request>& requests() const { return requests_; }
  const Request& request(int id) const { return requests_[id - 1]; }
  // Request a point belongs to; 0 for the depot.
  int request_of(int point_id) const { return request_of_[point_id]; }

  double travel_time(int a, int b) const {
    const TravelPoint& pa = points_[a];
    const TravelPoint& pb = points_[b];
    const double dx = pa.x - pb.x;
    const double dy = pa.y - pb.y;
    return std::sqrt(dx * dx + dy * dy);
  }

 private:
  std::string name_;
  std::vector<TravelPoint> points_;
  std::vector<Request> requests_;
  std::vector<int> request_of_;
  int capacity_ = 0;
  int vehicle_count_hint_ = 0;
};

// Spec-named free-function form.
inline double travel_time(int a, int b, const Instance& inst) {
  return inst.travel_time(a, b);
}

}  // namespace pges
