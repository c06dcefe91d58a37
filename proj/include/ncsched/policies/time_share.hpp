#pragma once

#include "ncsched/engine/policy.hpp"

namespace ncsched::policies {

/// Runs A at speed λ and B at speed 1 − λ, each against its own virtual
/// progress ledger. A sub-policy sees a job finish only once its own virtual
/// work reaches p_j (learned at the real completion), and sees successors
/// only then. Work a sub-policy spends on a job that is already finished in
/// reality is discarded.
///
/// Successor reveals are attributed through the completion that caused them,
/// which is exact when every job has at most one predecessor.
PolicyPtr time_share(PolicyPtr a, PolicyPtr b, const Rational& lambda = Rational(1, 2));

/// time_share(p, equal_share, 1/2).
PolicyPtr robustify(PolicyPtr p);

}  // namespace ncsched::policies
