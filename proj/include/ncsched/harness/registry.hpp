#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ncsched/engine/policy.hpp"
#include "ncsched/predictions/bundle.hpp"

namespace ncsched::harness {

/// A policy by registry name plus its parameter object, e.g.
/// {"name": "order_static", "params": {"variant": "work_conserving"}}.
/// Composite policies nest: time_share takes {"a", "b", "lambda"},
/// robustify takes {"inner"}. Any policy may name a bundle file under
/// params.predictions, which then replaces the generated predictions.
struct PolicyConfig {
  std::string name;
  Json params = Json::object();
};

Json policy_config_to_json(const PolicyConfig& config);
/// Accepts a bare name string or {"name", "params"}. Throws Parse.
PolicyConfig policy_config_from_json(const Json& doc);

std::vector<std::string> policy_names();

/// Throws UnknownName (also for nested configs) and InvalidSpec on bad params.
void check_policy(const PolicyConfig& config);

/// The prediction model the policy consumes, nothing for equal_share and
/// composites.
std::optional<predictions::Model> policy_model(const PolicyConfig& config);

/// Supplies predictions for a model. `slot` numbers the leaf policies of a
/// composite (0 for a plain policy) so each leaf can get its own noise.
using BundleProvider = std::function<predictions::PredictionBundle(predictions::Model model, std::size_t slot)>;

/// Builds the policy; `machines` only matters for wdeq_chains.
PolicyPtr make_policy(const PolicyConfig& config, const BundleProvider& provider, std::size_t machines);

}  // namespace ncsched::harness
