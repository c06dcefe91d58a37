#include "ncsched/predictions/ground_truth.hpp"

#include <algorithm>
#include <numeric>

#include "ncsched/core/structure.hpp"
#include "ncsched/error.hpp"
#include "ncsched/oracles/oracles.hpp"

namespace ncsched::predictions {

Ranking weight_order(const Instance& instance, const std::vector<JobId>& jobs) {
  std::vector<Rational> ws = successor_weights(instance);
  Ranking out = jobs;
  std::stable_sort(out.begin(), out.end(), [&](JobId a, JobId b) {
    return ws[a] != ws[b] ? ws[a] > ws[b] : a < b;
  });
  return out;
}

PredictionBundle ground_truth(const Instance& instance, Model model) {
  PredictionBundle b;
  b.model = model;
  std::vector<JobId> all(instance.size());
  std::iota(all.begin(), all.end(), 0);
  switch (model) {
    case Model::StaticWeights:
    case Model::AdaptiveWeights: {
      std::vector<Rational> ws = successor_weights(instance);
      WeightTable t;
      for (JobId v : model == Model::StaticWeights ? instance.sources() : all) t[v] = ws[v];
      b.payload = std::move(t);
      break;
    }
    case Model::StaticOrder:
      b.payload = weight_order(instance, instance.sources());
      break;
    case Model::AdaptiveOrder:
      b.payload = weight_order(instance, all);
      break;
    case Model::Averages: {
      WeightTable t;
      for (JobId v : all) {
        SuccessorAggregate agg = successor_aggregate(instance, v);
        if (!agg.average) {
          throw Error(Errc::UndefinedAverage, "job " + std::to_string(v) + " has zero successor processing");
        }
        t[v] = *agg.average;
      }
      b.payload = std::move(t);
      break;
    }
    case Model::ActionsStatic:
    case Model::ActionsAdaptive:
      b.payload = oracles::optimal_order(instance).order;
      break;
    case Model::Input: {
      policies::PredictedChains chains;
      for (const auto& c : chains_of(instance)) {
        policies::PredictedChain pc;
        pc.head = c.front();
        for (JobId j : c) pc.jobs.emplace_back(instance.p(j), instance.w(j));
        chains.push_back(std::move(pc));
      }
      b.payload = std::move(chains);
      break;
    }
  }
  return b;
}

}  // namespace ncsched::predictions
