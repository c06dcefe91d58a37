#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "ncsched/core/json_io.hpp"

namespace ncsched::harness {

enum class RandomKind { Chains, OutForest, InForest, General, Independent };

std::string random_kind_name(RandomKind kind);
/// Accepts chains, out_forest, in_forest, general, independent. Throws UnknownName.
RandomKind random_kind_from_name(const std::string& name);

/// Values k/den for k uniform in [lo, hi].
struct Grid {
  std::int64_t lo = 0;
  std::int64_t hi = 1;
  std::int64_t den = 1;
};

struct RandomModel {
  RandomKind kind = RandomKind::Chains;
  std::size_t n_min = 1;
  std::size_t n_max = 10;
  Grid p{1, 4, 1};
  Grid w{0, 4, 1};
  // Chains: probability that the next job extends the current chain, so
  // chain lengths are geometric. Forests: probability a job gets a parent.
  double attach = 0.6;
  // General DAGs: probability of each forward edge i -> j.
  double edge_probability = 0.3;
  // Relabel ids by a random permutation after building.
  bool shuffle_ids = true;
};

Json random_model_to_json(const RandomModel& model);
/// Missing keys keep their defaults. Throws Parse, OutOfRange.
RandomModel random_model_from_json(const Json& doc);

/// Deterministic in (model, rng state). Every job gets one draw from each grid.
Instance random_instance(const RandomModel& model, std::mt19937_64& rng);

}  // namespace ncsched::harness
