#include "ncsched/policies/chain_tracker.hpp"

#include <algorithm>

#include "ncsched/error.hpp"

namespace ncsched::policies {

void ChainTracker::observe(const PolicyView& view) {
  for (const ViewEvent& ev : view.events) observe_one(ev);
}

void ChainTracker::observe_one(const ViewEvent& ev) {
  if (ev.kind == ViewEventKind::Complete) {
    auto it = members_.find(ev.id);
    if (it == members_.end()) return;
    auto& f = front_[it->second.chain];
    if (f && *f == ev.id) f.reset();
    return;
  }
  if (!ev.cause) {
    heads_.insert(std::lower_bound(heads_.begin(), heads_.end(), ev.id), ev.id);
    members_[ev.id] = {ev.id, 0};
    front_[ev.id] = ev.id;
    return;
  }
  if (++reveals_by_cause_[*ev.cause] > 1) {
    throw Error(Errc::BranchingDetected,
                "completion of job " + std::to_string(*ev.cause) + " revealed several jobs");
  }
  auto parent = members_.find(*ev.cause);
  if (parent == members_.end()) {
    throw Error(Errc::BranchingDetected,
                "reveal of job " + std::to_string(ev.id) + " caused by an untracked job");
  }
  Member m{parent->second.chain, parent->second.position + 1};
  members_[ev.id] = m;
  front_[m.chain] = ev.id;
}

std::optional<JobId> ChainTracker::chain_of(JobId job) const {
  auto it = members_.find(job);
  if (it == members_.end()) return std::nullopt;
  return it->second.chain;
}

std::size_t ChainTracker::position_of(JobId job) const {
  auto it = members_.find(job);
  if (it == members_.end()) throw Error(Errc::UnknownId, "job " + std::to_string(job) + " not tracked");
  return it->second.position;
}

std::optional<JobId> ChainTracker::front_of(JobId head) const {
  auto it = front_.find(head);
  if (it == front_.end()) return std::nullopt;
  return it->second;
}

std::vector<JobId> ChainTracker::alive_chains() const {
  std::vector<JobId> out;
  for (JobId h : heads_) {
    if (alive(h)) out.push_back(h);
  }
  return out;
}

}  // namespace ncsched::policies
