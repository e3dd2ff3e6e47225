#pragma once

#include <array>
#include <cstdint>

namespace pges {

// Per-phase elementary-operation tallies. Units:
//   insertion_tests    one O(1) pair-insertion feasibility evaluation while
//                      building the feasible-insertion set
//   squeeze_move_evals one candidate move evaluated during squeeze (initial
//                      placement or repair)
//   ejection_steps[k]  one node of the lexicographic ejection tree for
//                      ejection size k; insertion-position probes at the
//                      leaves are the last two tree levels and count too
//   perturb_move_evals one feasibility probe during a perturb scan
//   coop_payload_units one point id of cooperation message payload (header
//                      -only messages count one unit)
// Tallies are monotone while a run is in progress and zero after reset().
struct OpCounters {
  static constexpr int kMaxTrackedK = 8;

  std::uint64_t insertion_tests = 0;
  std::uint64_t squeeze_move_evals = 0;
  std::array<std::uint64_t, kMaxTrackedK + 1> ejection_steps{};  // index by k
  std::uint64_t perturb_move_evals = 0;
  std::uint64_t coop_payload_units = 0;
  std::uint64_t coop_calls = 0;
  std::uint64_t outer_iterations = 0;  // z1 observed
  std::uint64_t inner_iterations = 0;  // z2 observed

  std::uint64_t ejection_steps_total() const {
    std::uint64_t total = 0;
    for (std::uint64_t v : ejection_steps) total += v;
    return total;
  }

  void reset() { *this = OpCounters{}; }

  OpCounters& operator+=(const OpCounters& other) {
    insertion_tests += other.insertion_tests;
    squeeze_move_evals += other.squeeze_move_evals;
    for (int k = 0; k <= kMaxTrackedK; ++k) {
      ejection_steps[k] += other.ejection_steps[k];
    }
    perturb_move_evals += other.perturb_move_evals;
    coop_payload_units += other.coop_payload_units;
    coop_calls += other.coop_calls;
    outer_iterations += other.outer_iterations;
    inner_iterations += other.inner_iterations;
    return *this;
  }
};

}  // namespace pges
