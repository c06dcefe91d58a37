#include "ncsched/policies/orders.hpp"

#include <algorithm>
#include <set>

#include "ncsched/error.hpp"
#include "ncsched/policies/chain_tracker.hpp"

namespace ncsched::policies {

namespace {

Rational harmonic_rate(std::size_t machines, std::size_t count, std::size_t position) {
  Rational r = Rational(static_cast<unsigned long>(machines)) /
               (harmonic(count) * Rational(static_cast<unsigned long>(position)));
  return r > 1 ? Rational(1) : r;
}

}  // namespace

OrderAdaptive::OrderAdaptive(std::vector<JobId> ranking) : ranking_(std::move(ranking)) {
  for (std::size_t i = 0; i < ranking_.size(); ++i) {
    if (!rank_.emplace(ranking_[i], i).second) {
      throw Error(Errc::OrderNotTotal, "job " + std::to_string(ranking_[i]) + " ranked twice");
    }
  }
}

RateVector OrderAdaptive::rates(const PolicyView& view) {
  std::vector<std::pair<std::size_t, JobId>> ranked;
  for (const FrontJob& f : view.front) {
    auto it = rank_.find(f.id);
    if (it == rank_.end()) {
      throw Error(Errc::OracleFailure, "order oracle does not rank front job " + std::to_string(f.id));
    }
    ranked.emplace_back(it->second, f.id);
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<JobId> order;
  RateVector out;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    order.push_back(ranked[i].second);
    out[ranked[i].second] = harmonic_rate(view.machines, ranked.size(), i + 1);
  }
  history_.push_back(std::move(order));
  return out;
}

PolicyPtr order_adaptive(std::vector<JobId> ranking) {
  return std::make_unique<OrderAdaptive>(std::move(ranking));
}

namespace {

class OrderStatic final : public Policy {
 public:
  OrderStatic(std::vector<JobId> order, StaticOrderVariant variant)
      : order_(std::move(order)), variant_(variant) {
    std::set<JobId> seen;
    for (JobId id : order_) {
      if (!seen.insert(id).second) {
        throw Error(Errc::OrderNotTotal, "job " + std::to_string(id) + " appears twice in the initial order");
      }
    }
  }

  std::string label() const override {
    return variant_ == StaticOrderVariant::Strict ? "order_static" : "order_static_wc";
  }

  RateVector rates(const PolicyView& view) override {
    tracker_.observe(view);
    if (position_.empty()) {
      // phantom ids are dropped; every initial front job needs a rank
      std::set<JobId> heads(tracker_.chains().begin(), tracker_.chains().end());
      std::size_t pos = 0;
      for (JobId id : order_) {
        if (heads.count(id)) position_[id] = ++pos;
      }
      for (JobId h : heads) {
        if (!position_.count(h)) {
          throw Error(Errc::MissingInitialJob, "initial front job " + std::to_string(h) + " missing from order");
        }
      }
      omega_ = position_.size();
    }
    std::vector<std::pair<std::size_t, JobId>> ranked;  // (initial position, front job)
    for (JobId c : tracker_.alive_chains()) ranked.emplace_back(position_.at(c), *tracker_.front_of(c));
    std::sort(ranked.begin(), ranked.end());
    RateVector out;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      if (variant_ == StaticOrderVariant::Strict) {
        out[ranked[i].second] = harmonic_rate(view.machines, omega_, ranked[i].first);
      } else {
        out[ranked[i].second] = harmonic_rate(view.machines, ranked.size(), i + 1);
      }
    }
    return out;
  }

  PolicyPtr fresh() const override { return std::make_unique<OrderStatic>(order_, variant_); }

 private:
  std::vector<JobId> order_;
  StaticOrderVariant variant_;
  ChainTracker tracker_;
  std::map<JobId, std::size_t> position_;
  std::size_t omega_ = 0;
};

}  // namespace

PolicyPtr order_static(std::vector<JobId> initial_order, StaticOrderVariant variant) {
  return std::make_unique<OrderStatic>(std::move(initial_order), variant);
}

}  // namespace ncsched::policies
