#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ncsched/core/json_io.hpp"
#include "ncsched/policies/follow.hpp"
#include "ncsched/policies/weights.hpp"

namespace ncsched::predictions {

enum class Model {
  StaticWeights,    // Ŵ_v for the initial front jobs
  AdaptiveWeights,  // Ŵ_v for every job
  StaticOrder,      // order of the initial front jobs
  AdaptiveOrder,    // ranking of every job
  Averages,         // â_v for every job
  ActionsStatic,    // predicted processing order σ̂
  ActionsAdaptive,  // ranking consulted whenever a machine idles
  Input,            // predicted chains
};

std::string model_name(Model model);
/// Throws UnknownName.
Model model_from_name(const std::string& name);

using WeightTable = policies::WeightTable;
using Ranking = std::vector<JobId>;
using Payload = std::variant<WeightTable, Ranking, policies::PredictedChains>;

struct NoiseSpec {
  std::optional<Rational> beta;  // multiplicative factor exp(u), u ~ U[-β, β]
  std::optional<std::size_t> swaps;  // random adjacent transpositions
  std::optional<std::size_t> length_delta;  // per-chain length change in {-ℓ..ℓ}
  std::uint64_t resolution = 1000000;  // factor grid denominator

  bool empty() const { return !beta && !swaps && !length_delta; }
};

Json noise_to_json(const NoiseSpec& noise);
NoiseSpec noise_from_json(const Json& doc);

struct Provenance {
  bool perturbed = false;
  std::uint64_t seed = 0;
  NoiseSpec noise;
};

struct PredictionBundle {
  Model model = Model::StaticWeights;
  Payload payload;
  Provenance provenance;

  const WeightTable& weights() const;
  const Ranking& ranking() const;
  const policies::PredictedChains& chains() const;
};

Json bundle_to_json(const PredictionBundle& bundle);
/// Throws Parse.
PredictionBundle bundle_from_json(const Json& doc);

}  // namespace ncsched::predictions
