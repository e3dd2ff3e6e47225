#pragma once

#include <cstdint>

namespace pges {

// Parameters of the pessimistic cost model. s1..s7 are the per-phase
// constants; z1/z2 the outer/inner loop trip counts. I (perturb steps) is
// carried for reporting; the model folds it into the constants.
struct CostModelParams {
  double s1 = 1, s2 = 1, s3 = 1, s4 = 1, s5 = 1, s6 = 1, s7 = 1;
  std::uint64_t z1 = 1;
  std::uint64_t z2 = 1;
  int k_max = 3;
  int perturb_steps = 0;
  int p = 1;
  std::uint64_t n = 0;
};

// Cost of one inner-loop pass: s5*n^4 + s6*p*n^(k_max+2) + s7*p*n.
double eval_T_in_pes(const CostModelParams& params);

// Full model: s1*n + z1*(s2*n + z2*T_in + s3*n) + s4*p*n.
double eval_T_pes(const CostModelParams& params);

}  // namespace pges
