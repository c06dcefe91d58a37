#pragma once

#include <map>
#include <vector>

#include "ncsched/engine/policy.hpp"

namespace ncsched::policies {

/// Rate min{1, m/|F_t|} on every front job.
PolicyPtr equal_share();

/// Proportional shares with the capping loop: while the largest remaining
/// weight has m'·W/ΣW ≥ 1 it gets rate 1 and leaves the pool with one
/// machine. Entries are (id, weight), weights positive.
RateVector capped_proportional(std::vector<std::pair<JobId, Rational>> weights, std::size_t machines);

}  // namespace ncsched::policies
