#include "ncsched/policies/time_share.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ncsched/error.hpp"
#include "ncsched/policies/basic.hpp"

namespace ncsched::policies {

namespace {

class TimeShare final : public Policy {
 public:
  TimeShare(PolicyPtr a, PolicyPtr b, Rational lambda, std::string label)
      : lambda_(std::move(lambda)), label_(std::move(label)) {
    if (lambda_ < 0 || lambda_ > 1) throw Error(Errc::OutOfRange, "time-sharing weight must lie in [0,1]");
    worlds_[0].policy = std::move(a);
    worlds_[0].share = lambda_;
    worlds_[1].policy = std::move(b);
    worlds_[1].share = Rational(1) - lambda_;
  }

  std::string label() const override { return label_; }

  PolicyPtr fresh() const override {
    return std::make_unique<TimeShare>(worlds_[0].policy->fresh(), worlds_[1].policy->fresh(), lambda_, label_);
  }

  std::optional<Rational> wake_up() const override { return wake_; }

  RateVector rates(const PolicyView& view) override {
    advance(view.time);
    for (const ViewEvent& ev : view.events) {
      if (ev.kind == ViewEventKind::Reveal) {
        weight_[ev.id] = ev.weight;
        real_front_.insert(ev.id);
        if (ev.cause) {
          children_[*ev.cause].push_back(ev.id);
        } else {
          for (World& w : worlds_) reveal(w, ev.id, std::nullopt);
        }
      } else {
        real_front_.erase(ev.id);
        auto it = real_progress_.find(ev.id);
        p_[ev.id] = it == real_progress_.end() ? Rational(0) : it->second;
      }
    }

    for (World& w : worlds_) {
      if (w.share == 0) continue;
      if (w.started) complete_finished(w);
      cascade(w);
      if (!w.front.empty() && (!w.started || !w.events.empty())) query(w, view);
      w.started = true;
    }

    RateVector out;
    for (JobId j : real_front_) {
      Rational r(0);
      for (const World& w : worlds_) {
        auto it = w.held.find(j);
        if (it != w.held.end()) r += w.share * it->second;
      }
      if (r > 0) out[j] = r;
    }

    wake_.reset();
    for (const World& w : worlds_) {
      for (const auto& [j, r] : w.held) {
        auto p = p_.find(j);
        if (r <= 0 || p == p_.end()) continue;
        Rational at = view.time + (p->second - w.progress.at(j)) / (w.share * r);
        if (!wake_ || at < *wake_) wake_ = at;
      }
    }
    return out;
  }

 private:
  struct World {
    PolicyPtr policy;
    Rational share{0};
    std::set<JobId> front;
    std::map<JobId, Rational> progress;
    RateVector held;
    std::vector<ViewEvent> events;
    std::vector<JobId> revealed;
    std::vector<JobId> completed;
    bool started = false;
  };

  void advance(const Rational& now) {
    Rational dt = now - last_time_;
    last_time_ = now;
    if (dt <= 0) return;
    for (World& w : worlds_) {
      for (const auto& [j, r] : w.held) {
        if (r <= 0) continue;
        Rational d = w.share * r * dt;
        w.progress[j] += d;
        if (real_front_.count(j)) real_progress_[j] += d;
      }
    }
  }

  bool finished(const World& w, JobId j) const {
    auto p = p_.find(j);
    if (p == p_.end()) return false;
    auto it = w.progress.find(j);
    Rational done = it == w.progress.end() ? Rational(0) : it->second;
    return done >= p->second;
  }

  void reveal(World& w, JobId j, std::optional<JobId> cause) {
    if (w.share == 0) return;
    w.front.insert(j);
    w.progress.emplace(j, Rational(0));
    w.revealed.push_back(j);
    w.events.push_back({ViewEventKind::Reveal, j, weight_.at(j), cause});
  }

  void complete(World& w, JobId j) {
    w.front.erase(j);
    w.held.erase(j);
    w.completed.push_back(j);
    w.events.push_back({ViewEventKind::Complete, j, weight_.at(j), std::nullopt});
    auto it = children_.find(j);
    if (it == children_.end()) return;
    std::vector<JobId> kids = it->second;
    std::sort(kids.begin(), kids.end());
    for (JobId c : kids) reveal(w, c, j);
  }

  void complete_finished(World& w) {
    std::vector<JobId> done;
    for (JobId j : w.front) {
      if (finished(w, j)) done.push_back(j);
    }
    for (JobId j : done) complete(w, j);
  }

  void cascade(World& w) {
    while (true) {
      auto it = std::find_if(w.front.begin(), w.front.end(), [&](JobId j) { return finished(w, j); });
      if (it == w.front.end()) return;
      complete(w, *it);
    }
  }

  void query(World& w, const PolicyView& real) {
    PolicyView v;
    v.time = w.share * real.time;
    v.machines = real.machines;
    for (JobId j : w.front) v.front.push_back({j, weight_.at(j)});
    std::sort(w.revealed.begin(), w.revealed.end());
    std::sort(w.completed.begin(), w.completed.end());
    v.revealed = std::move(w.revealed);
    v.completed = std::move(w.completed);
    v.events = std::move(w.events);
    w.revealed.clear();
    w.completed.clear();
    w.events.clear();
    RateVector r = w.policy->rates(v);
    check_rates(r, v);
    w.held = std::move(r);
  }

  Rational lambda_;
  std::string label_;
  World worlds_[2];
  std::map<JobId, Rational> weight_;
  std::map<JobId, std::vector<JobId>> children_;
  std::map<JobId, Rational> p_;  // learned at real completion
  std::map<JobId, Rational> real_progress_;
  std::set<JobId> real_front_;
  Rational last_time_{0};
  std::optional<Rational> wake_;
};

}  // namespace

PolicyPtr time_share(PolicyPtr a, PolicyPtr b, const Rational& lambda) {
  std::string label = "time_share(" + a->label() + "," + b->label() + "," + to_string(lambda) + ")";
  return std::make_unique<TimeShare>(std::move(a), std::move(b), lambda, std::move(label));
}

PolicyPtr robustify(PolicyPtr p) {
  std::string label = "robustify(" + p->label() + ")";
  return std::make_unique<TimeShare>(std::move(p), equal_share(), Rational(1, 2), std::move(label));
}

}  // namespace ncsched::policies
