#pragma once

#include <cstdint>

#include "ncsched/predictions/bundle.hpp"

namespace ncsched::predictions {

/// Deterministic noise. Weights and averages take `beta`; orders and actions
/// take `swaps`; input takes `beta` and/or `length_delta` (truncation keeps at
/// least one job, padding appends p = 1, w = 0 jobs). Any other field is
/// rejected with IncompatibleNoise.
PredictionBundle perturb(const PredictionBundle& bundle, const NoiseSpec& noise, std::uint64_t seed);

}  // namespace ncsched::predictions
