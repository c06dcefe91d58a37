#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ncsched/engine/policy.hpp"

namespace ncsched::policies {

/// Picks the job to start when a machine idles; `running` lists jobs already busy.
using ActionOracle = std::function<std::optional<JobId>(const PolicyView& view, const std::vector<JobId>& running)>;

/// Oracle answering with the best-ranked idle front job; unranked jobs last, by id.
ActionOracle ranking_oracle(std::vector<JobId> ranking);

/// Nonpreemptive: runs the idle front job with the smallest predicted
/// position at rate 1 (up to m jobs at once). Jobs missing from σ̂ get the
/// position |σ̂| + id; predicted jobs that never appear are skipped.
PolicyPtr follow_action_static(std::vector<JobId> sigma_hat);

/// Asks the oracle whenever a machine idles. Invalid answers are replaced
/// by the smallest-id idle front job.
PolicyPtr follow_action_adaptive(ActionOracle oracle);

/// A predicted chain, matched to an actual chain by the id of its head.
struct PredictedChain {
  JobId head = 0;
  std::vector<std::pair<Rational, Rational>> jobs;  // (p, w) in chain order
};
using PredictedChains = std::vector<PredictedChain>;

/// Follows the single-machine optimum of the predicted chains. Predicted
/// slots of chains that already ended (or already moved past them) are
/// discarded; actual jobs beyond the prediction run at the end by reveal
/// time, ties by id. Throws TopologyMismatch, UnmatchedChain.
PolicyPtr follow_input(PredictedChains predicted);

}  // namespace ncsched::policies
