#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pges/instance.hpp"
#include "pges/solution.hpp"

namespace pges {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& cause)
      : std::runtime_error("line " + std::to_string(line) + ": " + cause),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// Benchmark instance format:
//   line 1: <vehicle count> <capacity> <speed>
//   rows:   <id> <x> <y> <demand> <tw_earliest> <tw_latest> <service_time>
//           <pickup_sibling> <delivery_sibling>
// Row id 0 is the depot. A pickup row has pickup_sibling = 0 and
// delivery_sibling = partner id; a delivery row the reverse. LF and CRLF
// are both accepted. The speed field is read and ignored (travel time is
// Euclidean distance).
Instance parse_instance(std::istream& in, const std::string& name = "");
Instance load_instance(const std::string& path);

// On-disk solution: line 1 "route_count <k>", then k lines of
// space-separated point ids.
struct SolutionFile {
  std::string instance_name;
  int route_count = 0;
  std::vector<std::vector<int>> routes;
};

// Refuses (throws std::invalid_argument) when a request is unserved.
void write_solution(const Solution& sol, const Instance& inst,
                    std::ostream& out);
std::string solution_to_string(const Solution& sol, const Instance& inst);

SolutionFile read_solution_file(std::istream& in);

struct Verdict {
  bool accepted = true;
  std::vector<std::string> violations;
};

// Accepts iff every route passes the brute-force oracle, every request is
// served exactly once, and each pickup/delivery pair shares a route.
Verdict validate_solution(const SolutionFile& file, const Instance& inst);
Verdict validate_solution(const Solution& sol, const Instance& inst);

}  // namespace pges
