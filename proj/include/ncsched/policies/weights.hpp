#pragma once

#include <map>
#include <optional>

#include "ncsched/engine/policy.hpp"

namespace ncsched::policies {

/// Job id -> predicted total weight Ŵ of the job and its successors.
using WeightTable = std::map<JobId, Rational>;

/// Weighted round robin on chains with static predictions for the initial
/// front jobs. Uses the view's machine count; with m > 1 the capping loop applies.
PolicyPtr wrr_chains(WeightTable predictions);

/// Same rule with a fixed machine count; a view with another count is rejected.
PolicyPtr wdeq_chains(WeightTable predictions, std::size_t machines);

/// Rate min{1, m·Ŵ_j/ΣŴ} from an adaptive oracle table covering every job.
/// All-zero fronts fall back to equal share.
PolicyPtr wrr_adaptive(WeightTable oracle);

}  // namespace ncsched::policies
