#pragma once

#include <vector>

#include "dstfuse/compact_mass.hpp"

namespace dstfuse {

// U_c = bel({c}) - bel(frame minus {c}), one entry per class.
using UtilityVector = std::vector<double>;

struct DecisionResult {
  std::size_t predicted_class = 0;
  UtilityVector utilities;
  // More than one class attains the maximum utility.
  bool tie = false;
};

// Theta lies inside neither {c} nor its complement, so only singleton masses contribute:
// U_c = s_c - (S - s_c) = 2 s_c - S.
inline UtilityVector expected_utilities(const CompactMass& fused) {
  const double total = fused.singleton_total();
  UtilityVector u;
  u.reserve(fused.frame_size());
  for (double s : fused.singleton()) u.push_back(2.0 * s - total);
  return u;
}

// Argmax of the expected utilities; ties resolve to the lowest class index.
inline DecisionResult predict(const CompactMass& fused) {
  DecisionResult result;
  result.utilities = expected_utilities(fused);
  const auto& u = result.utilities;
  for (std::size_t c = 1; c < u.size(); ++c)
    if (u[c] > u[result.predicted_class]) result.predicted_class = c;
  const double best = u[result.predicted_class];
  for (std::size_t c = 0; c < u.size(); ++c)
    if (c != result.predicted_class && u[c] == best) result.tie = true;
  return result;
}

}  // namespace dstfuse
