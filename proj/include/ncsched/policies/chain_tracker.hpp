#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ncsched/engine/policy.hpp"

namespace ncsched::policies {

/// Follows chain identities through view events. A chain is named by the id
/// of its initial front job (its head). Only uses what the view exposes.
class ChainTracker {
 public:
  /// Consumes the view's events. Throws BranchingDetected when one completion
  /// reveals two jobs.
  void observe(const PolicyView& view);
  void observe_one(const ViewEvent& event);

  /// Heads in ascending id.
  const std::vector<JobId>& chains() const { return heads_; }
  std::optional<JobId> chain_of(JobId job) const;
  /// 0-based position of `job` inside its chain.
  std::size_t position_of(JobId job) const;
  /// Current front job of a chain, absent once the chain is finished.
  std::optional<JobId> front_of(JobId head) const;
  bool alive(JobId head) const { return front_of(head).has_value(); }
  /// Chains with a front job, ascending head id.
  std::vector<JobId> alive_chains() const;

 private:
  struct Member {
    JobId chain;
    std::size_t position;
  };
  std::vector<JobId> heads_;
  std::map<JobId, Member> members_;
  std::map<JobId, std::optional<JobId>> front_;
  std::map<JobId, std::size_t> reveals_by_cause_;
};

}  // namespace ncsched::policies
