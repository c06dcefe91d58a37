#include "ncsched/predictions/bundle.hpp"

#include <array>

#include "ncsched/error.hpp"

namespace ncsched::predictions {

namespace {

const std::array<std::pair<Model, const char*>, 8> kModelNames{{
    {Model::StaticWeights, "static_weights"},
    {Model::AdaptiveWeights, "adaptive_weights"},
    {Model::StaticOrder, "static_order"},
    {Model::AdaptiveOrder, "adaptive_order"},
    {Model::Averages, "averages"},
    {Model::ActionsStatic, "actions_static"},
    {Model::ActionsAdaptive, "actions_adaptive"},
    {Model::Input, "input"},
}};

}  // namespace

std::string model_name(Model model) {
  for (const auto& [m, name] : kModelNames) {
    if (m == model) return name;
  }
  return "unknown";
}

Model model_from_name(const std::string& name) {
  for (const auto& [m, n] : kModelNames) {
    if (name == n) return m;
  }
  throw Error(Errc::UnknownName, "unknown prediction model '" + name + "'");
}

Json noise_to_json(const NoiseSpec& noise) {
  Json out = Json::object();
  if (noise.beta) out["beta"] = to_string(*noise.beta);
  if (noise.swaps) out["swaps"] = *noise.swaps;
  if (noise.length_delta) out["length_delta"] = *noise.length_delta;
  out["resolution"] = noise.resolution;
  return out;
}

NoiseSpec noise_from_json(const Json& doc) {
  NoiseSpec n;
  if (doc.is_null()) return n;
  try {
    if (doc.contains("beta")) n.beta = rational_from_json(doc.at("beta"));
    if (doc.contains("swaps")) n.swaps = doc.at("swaps").get<std::size_t>();
    if (doc.contains("length_delta")) n.length_delta = doc.at("length_delta").get<std::size_t>();
    if (doc.contains("resolution")) n.resolution = doc.at("resolution").get<std::uint64_t>();
  } catch (const Json::exception& ex) {
    throw Error(Errc::Parse, std::string("noise spec: ") + ex.what());
  }
  if (n.beta && *n.beta < 0) throw Error(Errc::OutOfRange, "noise beta must be non-negative");
  if (n.resolution == 0) throw Error(Errc::OutOfRange, "noise resolution must be positive");
  return n;
}

const WeightTable& PredictionBundle::weights() const {
  if (auto* p = std::get_if<WeightTable>(&payload)) return *p;
  throw Error(Errc::MissingPrediction, "bundle " + model_name(model) + " carries no weight table");
}

const Ranking& PredictionBundle::ranking() const {
  if (auto* p = std::get_if<Ranking>(&payload)) return *p;
  throw Error(Errc::MissingPrediction, "bundle " + model_name(model) + " carries no order");
}

const policies::PredictedChains& PredictionBundle::chains() const {
  if (auto* p = std::get_if<policies::PredictedChains>(&payload)) return *p;
  throw Error(Errc::MissingPrediction, "bundle " + model_name(model) + " carries no predicted chains");
}

Json bundle_to_json(const PredictionBundle& bundle) {
  Json payload;
  if (auto* w = std::get_if<WeightTable>(&bundle.payload)) {
    payload = Json::object();
    for (const auto& [id, v] : *w) payload[std::to_string(id)] = to_string(v);
  } else if (auto* r = std::get_if<Ranking>(&bundle.payload)) {
    payload = *r;
  } else {
    payload = Json::array();
    for (const auto& c : std::get<policies::PredictedChains>(bundle.payload)) {
      Json jobs = Json::array();
      for (const auto& [p, w] : c.jobs) jobs.push_back({{"p", to_string(p)}, {"w", to_string(w)}});
      payload.push_back({{"head", c.head}, {"jobs", jobs}});
    }
  }
  Json prov = bundle.provenance.perturbed
                  ? Json{{"kind", "perturbed"}, {"seed", bundle.provenance.seed},
                         {"params", noise_to_json(bundle.provenance.noise)}}
                  : Json{{"kind", "truth"}};
  return {{"model", model_name(bundle.model)}, {"payload", payload}, {"provenance", prov}};
}

PredictionBundle bundle_from_json(const Json& doc) {
  PredictionBundle b;
  try {
    b.model = model_from_name(doc.at("model").get<std::string>());
    const Json& payload = doc.at("payload");
    switch (b.model) {
      case Model::StaticWeights:
      case Model::AdaptiveWeights:
      case Model::Averages: {
        WeightTable w;
        for (const auto& [key, value] : payload.items()) w[std::stoull(key)] = rational_from_json(value);
        b.payload = std::move(w);
        break;
      }
      case Model::StaticOrder:
      case Model::AdaptiveOrder:
      case Model::ActionsStatic:
      case Model::ActionsAdaptive:
        b.payload = payload.get<Ranking>();
        break;
      case Model::Input: {
        policies::PredictedChains chains;
        for (const Json& c : payload) {
          policies::PredictedChain pc;
          pc.head = c.at("head").get<JobId>();
          for (const Json& j : c.at("jobs")) pc.jobs.emplace_back(rational_from_json(j.at("p")), rational_from_json(j.at("w")));
          chains.push_back(std::move(pc));
        }
        b.payload = std::move(chains);
        break;
      }
    }
    if (doc.contains("provenance")) {
      const Json& prov = doc.at("provenance");
      b.provenance.perturbed = prov.value("kind", "truth") == "perturbed";
      if (b.provenance.perturbed) {
        b.provenance.seed = prov.value("seed", std::uint64_t{0});
        b.provenance.noise = noise_from_json(prov.value("params", Json()));
      }
    }
  } catch (const Json::exception& ex) {
    throw Error(Errc::Parse, std::string("prediction bundle: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw Error(Errc::Parse, std::string("prediction bundle: bad job id key"));
  }
  return b;
}

}  // namespace ncsched::predictions
