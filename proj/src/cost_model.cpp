#include "pges/cost_model.hpp"

#include <cmath>

namespace pges {

double eval_T_in_pes(const CostModelParams& params) {
  const double n = static_cast<double>(params.n);
  const double p = static_cast<double>(params.p);
  return params.s5 * std::pow(n, 4.0) +
         params.s6 * p * std::pow(n, static_cast<double>(params.k_max) + 2.0) +
         params.s7 * p * n;
}

double eval_T_pes(const CostModelParams& params) {
  const double n = static_cast<double>(params.n);
  const double p = static_cast<double>(params.p);
  const double z1 = static_cast<double>(params.z1);
  const double z2 = static_cast<double>(params.z2);
  return params.s1 * n +
         z1 * (params.s2 * n + z2 * eval_T_in_pes(params) + params.s3 * n) +
         params.s4 * p * n;
}

}  // namespace pges
