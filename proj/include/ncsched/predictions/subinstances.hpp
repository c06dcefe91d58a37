#pragma once

#include "ncsched/core/instance.hpp"
#include "ncsched/predictions/bundle.hpp"

namespace ncsched::predictions {

/// Predicted instance Ĉ, underpredicted part C_u, overpredicted part C_o and
/// the pruned copy C_p, built chain by chain from static chain predictions
/// keyed by head id (a missing head counts as Ŵ_c = 0). Chains appear in
/// ascending head order; ids are renumbered densely.
struct WeightSubinstances {
  Instance predicted;
  Instance under;
  Instance over;
  Instance pruned;
};

/// Throws TopologyMismatch.
WeightSubinstances build_weight_subinstances(const Instance& chains, const WeightTable& predictions);

}  // namespace ncsched::predictions
