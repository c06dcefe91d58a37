#pragma once

#include "ncsched/core/instance.hpp"
#include "ncsched/engine/simulate.hpp"

namespace ncsched {

/// Smallest ρ with w(S(j)) ≤ ρ·R_j·W for every segment with W > 0 and every
/// front job with R_j > 0 (for m > 1 also R_j < 1, checking m·w(S(j)) ≤ ρ·R_j·W).
/// Infinite if a front job with w(S(j)) > 0 sits at rate 0. Zero when no
/// segment constrains ρ. Throws TraceInstanceMismatch.
ExtendedRational min_rho_witness(const Trace& trace, const Instance& instance);

}  // namespace ncsched
