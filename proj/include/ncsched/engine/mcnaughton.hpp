#pragma once

#include <vector>

#include "ncsched/engine/simulate.hpp"

namespace ncsched {

struct Piece {
  JobId job = 0;
  Rational start{0};  // absolute time
  Rational end{0};
};

/// One list of pieces per machine, each sorted by start.
using MachineTimeline = std::vector<std::vector<Piece>>;

/// Wrap-around rule: lay jobs (ascending id) end to end across machines of
/// capacity L = segment length. Throws InfeasibleSegment.
MachineTimeline realize_mcnaughton(const Segment& segment, std::size_t m);

/// Checks busy time per machine ≤ L, per-job load = rate·L, and that no job
/// runs on two machines at once. Returns an empty string when all hold.
std::string check_realization(const Segment& segment, const MachineTimeline& timeline);

}  // namespace ncsched
