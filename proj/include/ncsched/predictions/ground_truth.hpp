#pragma once

#include "ncsched/core/instance.hpp"
#include "ncsched/predictions/bundle.hpp"

namespace ncsched::predictions {

/// Exact predictions: Ŵ_v = w(S(v)); orders by non-increasing w(S(v)), ties
/// by id; â_v = a(S(v)); actions from the optimal single-machine order; input
/// is the instance's own chains.
/// Throws TooLarge, UndefinedAverage, TopologyMismatch (input on non-chains).
PredictionBundle ground_truth(const Instance& instance, Model model);

/// Jobs ranked by non-increasing w(S(v)), ties by id.
Ranking weight_order(const Instance& instance, const std::vector<JobId>& jobs);

}  // namespace ncsched::predictions
