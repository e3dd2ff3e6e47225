#include "pges/instance_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace pges {

namespace {

// Strips CR and comments nothing else; returns false on stream end.
bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t") == std::string::npos;
}

}  // namespace

Instance parse_instance(std::istream& in, const std::string& name) {
  std::string line;
  int line_no = 0;

  long vehicles = 0, capacity = 0, speed = 0;
  for (;;) {
    if (!next_line(in, line)) throw ParseError(line_no, "missing header line");
    ++line_no;
    if (!blank(line)) break;
  }
  {
    std::istringstream ss(line);
    if (!(ss >> vehicles >> capacity >> speed)) {
      throw ParseError(line_no, "header must be three integers "
                                "(vehicles, capacity, speed)");
    }
    std::string extra;
    if (ss >> extra) throw ParseError(line_no, "trailing data in header");
    if (capacity < 0) throw ParseError(line_no, "negative capacity");
  }

  std::vector<TravelPoint> points;
  std::map<int, int> line_of_id;
  while (next_line(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    std::istringstream ss(line);
    long id, x, y, demand, e, l, svc, psib, dsib;
    if (!(ss >> id >> x >> y >> demand >> e >> l >> svc >> psib >> dsib)) {
      throw ParseError(line_no, "row must be nine integers");
    }
    std::string extra;
    if (ss >> extra) throw ParseError(line_no, "trailing data in row");
    if (line_of_id.count(static_cast<int>(id))) {
      throw ParseError(line_no, "duplicate id " + std::to_string(id));
    }
    line_of_id[static_cast<int>(id)] = line_no;
    if (e > l) throw ParseError(line_no, "window closes before it opens");
    if (svc < 0) throw ParseError(line_no, "negative service time");

    TravelPoint pt;
    pt.id = static_cast<int>(id);
    pt.x = static_cast<double>(x);
    pt.y = static_cast<double>(y);
    pt.demand = static_cast<int>(demand);
    pt.tw_earliest = static_cast<double>(e);
    pt.tw_latest = static_cast<double>(l);
    pt.service_time = static_cast<double>(svc);

    if (id == 0) {
      if (demand != 0 || psib != 0 || dsib != 0) {
        throw ParseError(line_no, "depot row must have zero demand and "
                                  "zero siblings");
      }
      pt.partner_id = kNoPartner;
    } else if (demand > 0) {
      if (psib != 0 || dsib == 0) {
        throw ParseError(line_no, "pickup row must name its delivery sibling");
      }
      pt.partner_id = static_cast<int>(dsib);
    } else if (demand < 0) {
      if (dsib != 0 || psib == 0) {
        throw ParseError(line_no, "delivery row must name its pickup sibling");
      }
      pt.partner_id = static_cast<int>(psib);
    } else {
      throw ParseError(line_no, "non-depot row with zero demand");
    }
    points.push_back(pt);
  }
  if (points.empty()) throw ParseError(line_no, "no point rows");

  // Rows may appear in any order; ids must be 0..N-1.
  std::vector<TravelPoint> ordered(points.size());
  std::vector<bool> seen(points.size(), false);
  for (const TravelPoint& pt : points) {
    if (pt.id < 0 || pt.id >= static_cast<int>(points.size())) {
      throw ParseError(line_of_id[pt.id], "point ids must be dense");
    }
    seen[pt.id] = true;
    ordered[pt.id] = pt;
  }
  for (size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw ParseError(line_no, "missing id " + std::to_string(i));
  }

  // Cross-row checks here so the error carries the offending line.
  for (const TravelPoint& pt : ordered) {
    if (pt.id == 0) continue;
    if (pt.partner_id <= 0 ||
        pt.partner_id >= static_cast<int>(ordered.size()) ||
        pt.partner_id == pt.id) {
      throw ParseError(line_of_id[pt.id], "dangling partner reference");
    }
    const TravelPoint& partner = ordered[pt.partner_id];
    if (partner.partner_id != pt.id) {
      throw ParseError(line_of_id[pt.id], "partner links not mutual");
    }
    if (pt.demand + partner.demand != 0) {
      throw ParseError(line_of_id[pt.id], "demand-sign mismatch with partner");
    }
  }

  try {
    return Instance(name, std::move(ordered), static_cast<int>(capacity),
                    static_cast<int>(vehicles));
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  }
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::string name = path;
  if (const auto slash = name.find_last_of('/'); slash != std::string::npos) {
    name = name.substr(slash + 1);
  }
  if (const auto dot = name.find_last_of('.'); dot != std::string::npos) {
    name = name.substr(0, dot);
  }
  return parse_instance(in, name);
}

void write_solution(const Solution& sol, const Instance& inst,
                    std::ostream& out) {
  for (int id = 1; id <= inst.n(); ++id) {
    if (!sol.serves(id)) {
      throw std::invalid_argument("refusing to write solution: request " +
                                  std::to_string(id) + " unserved");
    }
  }
  out << "route_count " << sol.route_count() << "\n";
  for (const Route& r : sol.routes) {
    for (size_t i = 0; i < r.visits.size(); ++i) {
      if (i) out << ' ';
      out << r.visits[i];
    }
    out << "\n";
  }
}

std::string solution_to_string(const Solution& sol, const Instance& inst) {
  std::ostringstream ss;
  write_solution(sol, inst, ss);
  return ss.str();
}

SolutionFile read_solution_file(std::istream& in) {
  SolutionFile file;
  std::string line;
  int line_no = 0;
  if (!next_line(in, line)) throw ParseError(1, "missing route_count line");
  ++line_no;
  {
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag >> file.route_count) || tag != "route_count" ||
        file.route_count < 0) {
      throw ParseError(line_no, "expected \"route_count <k>\"");
    }
  }
  for (int r = 0; r < file.route_count; ++r) {
    if (!next_line(in, line)) {
      throw ParseError(line_no, "expected " + std::to_string(file.route_count) +
                                    " route lines");
    }
    ++line_no;
    std::istringstream ss(line);
    std::vector<int> ids;
    int id;
    while (ss >> id) ids.push_back(id);
    if (ids.empty()) throw ParseError(line_no, "empty route line");
    file.routes.push_back(std::move(ids));
  }
  return file;
}

Verdict validate_solution(const SolutionFile& file, const Instance& inst) {
  Verdict v;
  auto reject = [&](const std::string& why) {
    v.accepted = false;
    v.violations.push_back(why);
  };

  std::vector<int> seen(inst.point_count(), 0);
  for (size_t r = 0; r < file.routes.size(); ++r) {
    for (int id : file.routes[r]) {
      if (id <= 0 || id >= inst.point_count()) {
        reject("route " + std::to_string(r) + ": unknown point id " +
               std::to_string(id));
        continue;
      }
      if (++seen[id] > 1) {
        reject("point " + std::to_string(id) + " visited more than once");
      }
    }
  }
  for (int id = 1; id < inst.point_count(); ++id) {
    if (seen[id] == 0) {
      reject("request " + std::to_string(inst.request_of(id)) +
             ": point " + std::to_string(id) + " never visited");
    }
  }

  for (int req_id = 1; req_id <= inst.n(); ++req_id) {
    const Request& req = inst.request(req_id);
    int pickup_route = -1, delivery_route = -1;
    for (size_t r = 0; r < file.routes.size(); ++r) {
      for (int id : file.routes[r]) {
        if (id == req.pickup) pickup_route = static_cast<int>(r);
        if (id == req.delivery) delivery_route = static_cast<int>(r);
      }
    }
    if (pickup_route >= 0 && delivery_route >= 0 &&
        pickup_route != delivery_route) {
      reject("request " + std::to_string(req_id) +
             ": pickup and delivery on different routes");
    }
  }

  for (size_t r = 0; r < file.routes.size(); ++r) {
    bool ids_ok = true;
    for (int id : file.routes[r]) {
      if (id <= 0 || id >= inst.point_count()) ids_ok = false;
    }
    if (!ids_ok) continue;
    if (!brute_force_feasible(file.routes[r], inst)) {
      // Name the first violating point for the report.
      const ViolationSummary sum = simulate_violations(file.routes[r], inst);
      std::string detail = "route " + std::to_string(r) + " infeasible";
      const TravelPoint& depot = inst.depot();
      double departure = depot.tw_earliest + depot.service_time;
      int prev = kDepotId;
      for (int id : file.routes[r]) {
        const TravelPoint& pt = inst.point(id);
        const double begin =
            std::max(pt.tw_earliest, departure + inst.travel_time(prev, id));
        if (begin > pt.tw_latest) {
          detail += ": point " + std::to_string(id) + " begins late by " +
                    std::to_string(begin - pt.tw_latest);
          break;
        }
        departure = begin + pt.service_time;
        prev = id;
      }
      if (sum.cap > 0) detail += " (capacity violation " +
                                 std::to_string(sum.cap) + ")";
      reject(detail);
    }
  }
  return v;
}

Verdict validate_solution(const Solution& sol, const Instance& inst) {
  SolutionFile file;
  file.instance_name = inst.name();
  file.route_count = sol.route_count();
  file.routes = sol.route_visit_lists();
  return validate_solution(file, inst);
}

}  // namespace pges
