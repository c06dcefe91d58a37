#include "ncsched/harness/registry.hpp"

#include <algorithm>

#include "ncsched/error.hpp"
#include "ncsched/policies/basic.hpp"
#include "ncsched/policies/follow.hpp"
#include "ncsched/policies/orders.hpp"
#include "ncsched/policies/time_share.hpp"
#include "ncsched/policies/weights.hpp"

namespace ncsched::harness {

using predictions::Model;

namespace {

const std::vector<std::string> kNames = {"equal_share",  "wrr_chains",    "wdeq_chains", "wrr_adaptive",
                                         "order_adaptive", "order_static", "follow_action", "follow_input",
                                         "time_share",   "robustify"};

std::string param_string(const PolicyConfig& c, const char* key, const std::string& fallback) {
  if (!c.params.contains(key)) return fallback;
  const Json& v = c.params.at(key);
  if (!v.is_string()) throw Error(Errc::InvalidSpec, c.name + ": parameter '" + key + "' must be a string");
  return v.get<std::string>();
}

PolicyConfig nested(const PolicyConfig& c, const char* key) {
  if (!c.params.contains(key)) throw Error(Errc::InvalidSpec, c.name + " needs parameter '" + key + "'");
  return policy_config_from_json(c.params.at(key));
}

Rational lambda_of(const PolicyConfig& c) {
  if (!c.params.contains("lambda")) return Rational(1, 2);
  Rational l = rational_from_json(c.params.at("lambda"));
  if (l < 0 || l > 1) throw Error(Errc::InvalidSpec, "time_share lambda must lie in [0, 1]");
  return l;
}

// Leaves of a composite are numbered depth first.
std::size_t leaf_count(const PolicyConfig& c) {
  if (c.name == "time_share") return leaf_count(nested(c, "a")) + leaf_count(nested(c, "b"));
  if (c.name == "robustify") return leaf_count(nested(c, "inner")) + 1;
  return 1;
}

PolicyPtr build(const PolicyConfig& c, const BundleProvider& provider, std::size_t machines, std::size_t slot) {
  using namespace policies;
  if (c.name == "time_share") {
    PolicyConfig a = nested(c, "a");
    PolicyConfig b = nested(c, "b");
    PolicyPtr pa = build(a, provider, machines, slot);
    PolicyPtr pb = build(b, provider, machines, slot + leaf_count(a));
    return time_share(std::move(pa), std::move(pb), lambda_of(c));
  }
  if (c.name == "robustify") return robustify(build(nested(c, "inner"), provider, machines, slot));
  if (c.name == "equal_share") return equal_share();

  std::optional<Model> model = policy_model(c);
  predictions::PredictionBundle bundle;
  if (c.params.contains("predictions")) {
    bundle = predictions::bundle_from_json(read_json_file(c.params.at("predictions").get<std::string>()));
    if (bundle.model != *model) {
      throw Error(Errc::InvalidSpec, c.name + " needs " + predictions::model_name(*model) + " predictions, file has " +
                                         predictions::model_name(bundle.model));
    }
  } else {
    bundle = provider(*model, slot);
  }
  if (c.name == "wrr_chains") return wrr_chains(bundle.weights());
  if (c.name == "wdeq_chains") return wdeq_chains(bundle.weights(), machines);
  if (c.name == "wrr_adaptive") return wrr_adaptive(bundle.weights());
  if (c.name == "order_adaptive") return order_adaptive(bundle.ranking());
  if (c.name == "order_static") {
    std::string v = param_string(c, "variant", "strict");
    return order_static(bundle.ranking(), v == "strict" ? StaticOrderVariant::Strict : StaticOrderVariant::WorkConserving);
  }
  if (c.name == "follow_action") {
    if (*model == Model::ActionsStatic) return follow_action_static(bundle.ranking());
    return follow_action_adaptive(ranking_oracle(bundle.ranking()));
  }
  if (c.name == "follow_input") return follow_input(bundle.chains());
  throw Error(Errc::UnknownName, "unknown policy '" + c.name + "'");
}

}  // namespace

Json policy_config_to_json(const PolicyConfig& config) { return {{"name", config.name}, {"params", config.params}}; }

PolicyConfig policy_config_from_json(const Json& doc) {
  PolicyConfig c;
  if (doc.is_string()) {
    c.name = doc.get<std::string>();
    return c;
  }
  if (!doc.is_object() || !doc.contains("name") || !doc.at("name").is_string()) {
    throw Error(Errc::Parse, "policy must be a name or an object with a string 'name'");
  }
  c.name = doc.at("name").get<std::string>();
  if (doc.contains("params")) {
    if (!doc.at("params").is_object()) throw Error(Errc::Parse, "policy params must be an object");
    c.params = doc.at("params");
  }
  return c;
}

std::vector<std::string> policy_names() { return kNames; }

void check_policy(const PolicyConfig& c) {
  if (std::find(kNames.begin(), kNames.end(), c.name) == kNames.end()) {
    throw Error(Errc::UnknownName, "unknown policy '" + c.name + "'");
  }
  if (c.name == "time_share") {
    check_policy(nested(c, "a"));
    check_policy(nested(c, "b"));
    lambda_of(c);
  } else if (c.name == "robustify") {
    check_policy(nested(c, "inner"));
  } else if (c.name == "order_static") {
    std::string v = param_string(c, "variant", "strict");
    if (v != "strict" && v != "work_conserving") throw Error(Errc::InvalidSpec, "order_static variant '" + v + "'");
  } else if (c.name == "follow_action") {
    std::string m = param_string(c, "mode", "static");
    if (m != "static" && m != "adaptive") throw Error(Errc::InvalidSpec, "follow_action mode '" + m + "'");
  }
  if (c.params.contains("predictions") && !c.params.at("predictions").is_string()) {
    throw Error(Errc::InvalidSpec, c.name + ": predictions must be a file path");
  }
}

std::optional<Model> policy_model(const PolicyConfig& c) {
  if (c.name == "wrr_chains" || c.name == "wdeq_chains") return Model::StaticWeights;
  if (c.name == "wrr_adaptive") return Model::AdaptiveWeights;
  if (c.name == "order_adaptive") return Model::AdaptiveOrder;
  if (c.name == "order_static") return Model::StaticOrder;
  if (c.name == "follow_action") {
    return param_string(c, "mode", "static") == "static" ? Model::ActionsStatic : Model::ActionsAdaptive;
  }
  if (c.name == "follow_input") return Model::Input;
  return std::nullopt;
}

PolicyPtr make_policy(const PolicyConfig& config, const BundleProvider& provider, std::size_t machines) {
  check_policy(config);
  return build(config, provider, machines, 0);
}

}  // namespace ncsched::harness
