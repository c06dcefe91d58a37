#include "ncsched/policies/follow.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ncsched/error.hpp"
#include "ncsched/oracles/oracles.hpp"
#include "ncsched/policies/chain_tracker.hpp"

namespace ncsched::policies {

namespace {

std::map<JobId, std::size_t> priorities(const std::vector<JobId>& ranking) {
  std::map<JobId, std::size_t> out;
  for (std::size_t i = 0; i < ranking.size(); ++i) out.emplace(ranking[i], i);
  return out;
}

std::size_t priority_of(const std::map<JobId, std::size_t>& table, std::size_t predicted, JobId id) {
  auto it = table.find(id);
  return it == table.end() ? predicted + id : it->second;
}

// Shared nonpreemptive bookkeeping: running jobs keep rate 1 until they complete.
class Nonpreemptive : public Policy {
 public:
  RateVector rates(const PolicyView& view) final {
    for (JobId id : view.completed) running_.erase(std::remove(running_.begin(), running_.end(), id), running_.end());
    observe(view);
    while (running_.size() < view.machines) {
      std::optional<JobId> next = pick(view);
      if (!next) break;
      running_.push_back(*next);
    }
    RateVector out;
    for (JobId id : running_) out[id] = 1;
    return out;
  }

 protected:
  virtual void observe(const PolicyView&) {}
  /// An idle front job to start, or none.
  virtual std::optional<JobId> pick(const PolicyView& view) = 0;
  bool running(JobId id) const { return std::find(running_.begin(), running_.end(), id) != running_.end(); }
  const std::vector<JobId>& running_jobs() const { return running_; }

 private:
  std::vector<JobId> running_;
};

class FollowActionStatic final : public Nonpreemptive {
 public:
  explicit FollowActionStatic(std::vector<JobId> sigma) : sigma_(std::move(sigma)), table_(priorities(sigma_)) {}

  std::string label() const override { return "follow_action"; }
  PolicyPtr fresh() const override { return std::make_unique<FollowActionStatic>(sigma_); }

 protected:
  std::optional<JobId> pick(const PolicyView& view) override {
    std::optional<JobId> best;
    std::size_t best_priority = 0;
    for (const FrontJob& f : view.front) {
      if (running(f.id)) continue;
      std::size_t pr = priority_of(table_, sigma_.size(), f.id);
      if (!best || pr < best_priority) {
        best = f.id;
        best_priority = pr;
      }
    }
    return best;
  }

 private:
  std::vector<JobId> sigma_;
  std::map<JobId, std::size_t> table_;
};

class FollowActionAdaptive final : public Nonpreemptive {
 public:
  explicit FollowActionAdaptive(ActionOracle oracle) : oracle_(std::move(oracle)) {}

  std::string label() const override { return "follow_action_adaptive"; }
  PolicyPtr fresh() const override { return std::make_unique<FollowActionAdaptive>(oracle_); }

 protected:
  std::optional<JobId> pick(const PolicyView& view) override {
    std::optional<JobId> answer = oracle_ ? oracle_(view, running_jobs()) : std::nullopt;
    if (answer && view.in_front(*answer) && !running(*answer)) return answer;
    for (const FrontJob& f : view.front) {
      if (!running(f.id)) return f.id;
    }
    return std::nullopt;
  }

 private:
  ActionOracle oracle_;
};

class FollowInput final : public Nonpreemptive {
 public:
  explicit FollowInput(PredictedChains predicted) : predicted_(std::move(predicted)) {
    InstanceBuilder builder;
    std::vector<std::pair<JobId, std::size_t>> slot_of_job;  // predicted job -> (head label, position)
    std::set<JobId> labels;
    for (const PredictedChain& c : predicted_) {
      if (c.jobs.empty() || !labels.insert(c.head).second) {
        throw Error(Errc::TopologyMismatch, "predicted chains need distinct head labels and at least one job");
      }
      builder.chain(c.jobs);
      for (std::size_t i = 0; i < c.jobs.size(); ++i) slot_of_job.emplace_back(c.head, i);
    }
    length_.clear();
    for (const PredictedChain& c : predicted_) length_[c.head] = c.jobs.size();
    Instance predicted_instance = builder.build();
    for (JobId j : oracles::opt_chain_exact(predicted_instance).order) slots_.push_back(slot_of_job[j]);
  }

  std::string label() const override { return "follow_input"; }
  PolicyPtr fresh() const override { return std::make_unique<FollowInput>(predicted_); }

 protected:
  void observe(const PolicyView& view) override {
    tracker_.observe(view);
    for (JobId id : view.revealed) revealed_at_.emplace(id, view.time);
    if (!checked_) {
      checked_ = true;
      for (JobId head : tracker_.chains()) {
        if (!length_.count(head)) {
          throw Error(Errc::UnmatchedChain, "actual chain " + std::to_string(head) + " has no prediction");
        }
      }
    }
  }

  std::optional<JobId> pick(const PolicyView& view) override {
    std::set<JobId> blocked;  // chains whose next slot is not reachable yet
    for (std::size_t i = next_; i < slots_.size(); ++i) {
      if (consumed_.count(i)) continue;
      auto [head, position] = slots_[i];
      std::optional<JobId> front = tracker_.front_of(head);
      bool known = std::find(tracker_.chains().begin(), tracker_.chains().end(), head) != tracker_.chains().end();
      if (!known || !front || tracker_.position_of(*front) > position) {
        consumed_.insert(i);  // rule a): the chain ended or moved on
        continue;
      }
      if (blocked.count(head)) continue;
      if (tracker_.position_of(*front) == position && !running(*front)) {
        consumed_.insert(i);
        return *front;
      }
      blocked.insert(head);
    }
    while (next_ < slots_.size() && consumed_.count(next_)) ++next_;

    // rule b): jobs beyond the prediction, by reveal time then id
    std::optional<JobId> best;
    for (const FrontJob& f : view.front) {
      if (running(f.id)) continue;
      JobId head = *tracker_.chain_of(f.id);
      if (tracker_.position_of(f.id) < length_.at(head)) continue;
      if (!best || revealed_at_.at(f.id) < revealed_at_.at(*best)) best = f.id;
    }
    return best;
  }

 private:
  PredictedChains predicted_;
  std::map<JobId, std::size_t> length_;
  std::vector<std::pair<JobId, std::size_t>> slots_;
  std::set<std::size_t> consumed_;
  std::size_t next_ = 0;
  ChainTracker tracker_;
  std::map<JobId, Rational> revealed_at_;
  bool checked_ = false;
};

}  // namespace

ActionOracle ranking_oracle(std::vector<JobId> ranking) {
  auto table = std::make_shared<std::map<JobId, std::size_t>>(priorities(ranking));
  std::size_t predicted = ranking.size();
  return [table, predicted](const PolicyView& view, const std::vector<JobId>& busy) -> std::optional<JobId> {
    std::optional<JobId> best;
    std::size_t best_priority = 0;
    for (const FrontJob& f : view.front) {
      if (std::find(busy.begin(), busy.end(), f.id) != busy.end()) continue;
      std::size_t pr = priority_of(*table, predicted, f.id);
      if (!best || pr < best_priority) {
        best = f.id;
        best_priority = pr;
      }
    }
    return best;
  };
}

PolicyPtr follow_action_static(std::vector<JobId> sigma_hat) {
  return std::make_unique<FollowActionStatic>(std::move(sigma_hat));
}

PolicyPtr follow_action_adaptive(ActionOracle oracle) {
  return std::make_unique<FollowActionAdaptive>(std::move(oracle));
}

PolicyPtr follow_input(PredictedChains predicted) { return std::make_unique<FollowInput>(std::move(predicted)); }

}  // namespace ncsched::policies
