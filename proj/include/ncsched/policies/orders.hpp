#pragma once

#include <map>
#include <vector>

#include "ncsched/engine/policy.hpp"

namespace ncsched::policies {

/// Adaptive weight-order policy: the front job at predicted position i gets
/// rate min{1, m/(H_{|F|}·i)}. The oracle is a global ranking of all jobs;
/// the order on a front is the ranking restricted to it.
class OrderAdaptive final : public Policy {
 public:
  /// Throws OrderNotTotal on duplicate ranks.
  explicit OrderAdaptive(std::vector<JobId> ranking);

  std::string label() const override { return "order_adaptive"; }
  RateVector rates(const PolicyView& view) override;
  PolicyPtr fresh() const override { return std::make_unique<OrderAdaptive>(ranking_); }

  /// The predicted order handed out at each query, one entry per query.
  const std::vector<std::vector<JobId>>& history() const { return history_; }

 private:
  std::vector<JobId> ranking_;
  std::map<JobId, std::size_t> rank_;
  std::vector<std::vector<JobId>> history_;
};

PolicyPtr order_adaptive(std::vector<JobId> ranking);

enum class StaticOrderVariant { Strict, WorkConserving };

/// Static weight-order policy on chains. `initial_order` ranks the initial
/// front jobs; each chain keeps its head's position. Strict keeps the rate
/// min{1, m/(H_ω·i)} forever, work-conserving re-ranks the alive chains.
PolicyPtr order_static(std::vector<JobId> initial_order, StaticOrderVariant variant = StaticOrderVariant::Strict);

}  // namespace ncsched::policies
