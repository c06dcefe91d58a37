#include "ncsched/policies/weights.hpp"

#include "ncsched/error.hpp"
#include "ncsched/policies/basic.hpp"
#include "ncsched/policies/chain_tracker.hpp"

namespace ncsched::policies {

namespace {

class WrrChains final : public Policy {
 public:
  WrrChains(WeightTable predictions, std::optional<std::size_t> machines)
      : predictions_(std::move(predictions)), machines_(machines) {}

  std::string label() const override { return machines_ ? "wdeq_chains" : "wrr_chains"; }

  RateVector rates(const PolicyView& view) override {
    if (machines_ && *machines_ != view.machines) {
      throw Error(Errc::OutOfRange, "wdeq_chains built for " + std::to_string(*machines_) +
                                        " machines, run on " + std::to_string(view.machines));
    }
    // Line 5 bookkeeping: subtract every completed weight from its chain.
    for (const ViewEvent& ev : view.events) {
      if (ev.kind == ViewEventKind::Reveal && !ev.cause) {
        auto it = predictions_.find(ev.id);
        tracked_[ev.id] = it == predictions_.end() ? std::optional<Rational>() : it->second;
      }
      tracker_.observe_one(ev);
      if (ev.kind == ViewEventKind::Complete) {
        if (auto c = tracker_.chain_of(ev.id); c && tracked_[*c]) *tracked_[*c] -= ev.weight;
      }
    }
    std::vector<JobId> alive = tracker_.alive_chains();
    if (first_) {
      first_ = false;
      for (JobId c : alive) {
        if (!tracked_[c]) {
          throw Error(Errc::MissingPrediction, "no weight prediction for initial front job " + std::to_string(c));
        }
      }
    }

    std::vector<std::pair<JobId, Rational>> pool;
    std::vector<JobId> drained;
    for (JobId c : alive) {
      JobId front = *tracker_.front_of(c);
      if (!view.in_front(front)) {
        throw Error(Errc::BranchingDetected, "chain " + std::to_string(c) + " lost its front job");
      }
      const std::optional<Rational>& w = tracked_[c];
      if (w && *w > 0) pool.emplace_back(front, *w);
      else drained.push_back(front);
    }
    if (!pool.empty()) return capped_proportional(std::move(pool), view.machines);

    // Alg. 1 Line 7: remaining chains in an arbitrary order, here by chain id.
    RateVector out;
    if (drained.empty()) return out;
    if (view.machines == 1) {
      out[drained.front()] = 1;
      return out;
    }
    Rational r(static_cast<unsigned long>(view.machines), static_cast<unsigned long>(drained.size()));
    r.canonicalize();
    if (r > 1) r = 1;
    for (JobId j : drained) out[j] = r;
    return out;
  }

  PolicyPtr fresh() const override { return std::make_unique<WrrChains>(predictions_, machines_); }

 private:
  WeightTable predictions_;
  std::optional<std::size_t> machines_;
  ChainTracker tracker_;
  std::map<JobId, std::optional<Rational>> tracked_;
  bool first_ = true;
};

class WrrAdaptive final : public Policy {
 public:
  explicit WrrAdaptive(WeightTable oracle) : oracle_(std::move(oracle)) {}

  std::string label() const override { return "wrr_adaptive"; }

  RateVector rates(const PolicyView& view) override {
    std::vector<std::pair<JobId, Rational>> answers;
    Rational total(0);
    for (const FrontJob& f : view.front) {
      auto it = oracle_.find(f.id);
      if (it == oracle_.end()) {
        throw Error(Errc::OracleFailure, "oracle has no answer for front job " + std::to_string(f.id));
      }
      if (it->second < 0) {
        throw Error(Errc::OracleFailure, "oracle answered a negative weight for job " + std::to_string(f.id));
      }
      answers.emplace_back(f.id, it->second);
      total += it->second;
    }
    RateVector out;
    if (answers.empty()) return out;
    Rational m(static_cast<unsigned long>(view.machines));
    if (total == 0) {
      Rational r = m / Rational(static_cast<unsigned long>(answers.size()));
      if (r > 1) r = 1;
      for (const auto& [id, w] : answers) out[id] = r;
      return out;
    }
    for (const auto& [id, w] : answers) {
      Rational r = m * w / total;
      out[id] = r > 1 ? Rational(1) : r;
    }
    return out;
  }

  PolicyPtr fresh() const override { return std::make_unique<WrrAdaptive>(oracle_); }

 private:
  WeightTable oracle_;
};

}  // namespace

PolicyPtr wrr_chains(WeightTable predictions) {
  return std::make_unique<WrrChains>(std::move(predictions), std::nullopt);
}

PolicyPtr wdeq_chains(WeightTable predictions, std::size_t machines) {
  if (machines == 0) throw Error(Errc::OutOfRange, "machine count must be at least 1");
  return std::make_unique<WrrChains>(std::move(predictions), machines);
}

PolicyPtr wrr_adaptive(WeightTable oracle) { return std::make_unique<WrrAdaptive>(std::move(oracle)); }

}  // namespace ncsched::policies
