#include "ncsched/engine/simulate.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ncsched/core/json_io.hpp"
#include "ncsched/error.hpp"

namespace ncsched {

bool PolicyView::in_front(JobId id) const {
  auto it = std::lower_bound(front.begin(), front.end(), id,
                             [](const FrontJob& f, JobId x) { return f.id < x; });
  return it != front.end() && it->id == id;
}

const Rational& PolicyView::weight_of(JobId id) const {
  auto it = std::lower_bound(front.begin(), front.end(), id,
                             [](const FrontJob& f, JobId x) { return f.id < x; });
  if (it == front.end() || it->id != id) {
    throw Error(Errc::UnknownId, "job " + std::to_string(id) + " is not a front job");
  }
  return it->weight;
}

void check_rates(const RateVector& rates, const PolicyView& view) {
  Rational sum(0);
  for (const auto& [id, r] : rates) {
    if (!view.in_front(id)) {
      throw Error(Errc::RateOnNonFrontJob, "rate assigned to non-front job " + std::to_string(id));
    }
    if (r < 0 || r > 1) {
      throw Error(Errc::InfeasibleRates, "rate " + to_string(r) + " on job " + std::to_string(id) +
                                             " outside [0,1]");
    }
    sum += r;
  }
  if (sum > Rational(static_cast<unsigned long>(view.machines))) {
    throw Error(Errc::InfeasibleRates, "rates sum to " + to_string(sum) + " on " +
                                           std::to_string(view.machines) + " machine(s)");
  }
}

const Rational& Segment::rate(JobId id) const {
  static const Rational zero(0);
  auto it = rates.find(id);
  return it == rates.end() ? zero : it->second;
}

Rational objective_of(const Instance& instance, const std::vector<Rational>& completion) {
  Rational total(0);
  for (const Job& j : instance.jobs()) total += j.w * completion.at(j.id);
  return total;
}

namespace {

class Run {
 public:
  Run(const Instance& instance, Policy& policy, std::size_t m, const SimulateOptions& options)
      : inst_(instance), policy_(policy), m_(m), options_(options) {
    std::size_t n = inst_.size();
    remaining_.resize(n);
    missing_preds_.resize(n);
    done_.assign(n, false);
    sim_.result.completion.assign(n, Rational(0));
    sim_.trace.machines = m;
    for (JobId v = 0; v < n; ++v) {
      remaining_[v] = inst_.p(v);
      missing_preds_[v] = inst_.predecessors(v).size();
      unfinished_weight_ += inst_.w(v);
    }
  }

  Simulation run() {
    for (JobId v : inst_.sources()) reveal(v, std::nullopt);
    cascade();
    std::size_t idle_streak = 0;
    while (unfinished_ > 0) {
      PolicyView view = make_view();
      if (options_.on_view) options_.on_view(view);
      RateVector rates = policy_.rates(view);
      check_rates(rates, view);

      std::optional<Rational> dt;
      for (const auto& [id, r] : rates) {
        if (r > 0) {
          Rational d = remaining_[id] / r;
          if (!dt || d < *dt) dt = d;
        }
      }
      bool progress = dt.has_value();
      if (std::optional<Rational> wake = policy_.wake_up(); wake && *wake > now_) {
        Rational d = *wake - now_;
        if (!dt || d < *dt) dt = d;
      }
      if (!dt) {
        throw Error(Errc::PolicyStall, "policy " + policy_.label() + " assigned no progress at t=" +
                                           to_string(now_));
      }
      idle_streak = progress ? 0 : idle_streak + 1;
      if (idle_streak > options_.idle_guard) {
        throw Error(Errc::PolicyStall, "policy " + policy_.label() + " idled past the guard");
      }

      Segment seg;
      seg.start = now_;
      seg.end = now_ + *dt;
      seg.unfinished_weight = unfinished_weight_;
      for (JobId v : front_) {
        seg.front.push_back(v);
        auto it = rates.find(v);
        seg.rates[v] = it == rates.end() ? Rational(0) : it->second;
      }
      std::vector<JobId> finished;
      for (const auto& [id, r] : rates) {
        if (r > 0) {
          remaining_[id] -= r * *dt;
          if (remaining_[id] == 0) finished.push_back(id);
        }
      }
      now_ = seg.end;
      sim_.trace.segments.push_back(std::move(seg));
      for (JobId v : finished) complete(v);
      cascade();
    }
    Rational makespan(0);
    for (const Rational& c : sim_.result.completion) makespan = max(makespan, c);
    sim_.result.makespan = makespan;
    sim_.result.objective = objective_of(inst_, sim_.result.completion);
    return std::move(sim_);
  }

 private:
  void reveal(JobId v, std::optional<JobId> cause) {
    front_.insert(v);
    ++unfinished_;
    revealed_.push_back(v);
    events_.push_back({ViewEventKind::Reveal, v, inst_.w(v), cause});
    sim_.trace.reveals.push_back({v, now_});
    if (inst_.p(v) == 0) zero_ready_.insert(v);
  }

  void complete(JobId v) {
    front_.erase(v);
    zero_ready_.erase(v);
    done_[v] = true;
    --unfinished_;
    unfinished_weight_ -= inst_.w(v);
    sim_.result.completion[v] = now_;
    sim_.trace.completions.push_back({v, now_});
    completed_.push_back(v);
    events_.push_back({ViewEventKind::Complete, v, inst_.w(v), std::nullopt});
    for (JobId u : inst_.successors(v)) {
      if (--missing_preds_[u] == 0) reveal(u, v);
    }
  }

  void cascade() {
    while (!zero_ready_.empty()) {
      JobId v = *zero_ready_.begin();
      complete(v);
    }
  }

  PolicyView make_view() {
    PolicyView view;
    view.time = now_;
    view.machines = m_;
    for (JobId v : front_) view.front.push_back({v, inst_.w(v)});
    std::sort(revealed_.begin(), revealed_.end());
    std::sort(completed_.begin(), completed_.end());
    view.revealed = std::move(revealed_);
    view.completed = std::move(completed_);
    view.events = std::move(events_);
    revealed_.clear();
    completed_.clear();
    events_.clear();
    return view;
  }

  const Instance& inst_;
  Policy& policy_;
  std::size_t m_;
  const SimulateOptions& options_;
  Simulation sim_;
  Rational now_{0};
  std::vector<Rational> remaining_;
  std::vector<std::size_t> missing_preds_;
  std::vector<bool> done_;
  std::set<JobId> front_;
  std::set<JobId> zero_ready_;
  std::size_t unfinished_ = 0;
  Rational unfinished_weight_{0};
  std::vector<JobId> revealed_;
  std::vector<JobId> completed_;
  std::vector<ViewEvent> events_;
};

}  // namespace

Simulation simulate(const Instance& instance, Policy& policy, std::size_t m,
                    const SimulateOptions& options) {
  if (m == 0) throw Error(Errc::OutOfRange, "machine count must be at least 1");
  return Run(instance, policy, m, options).run();
}

std::string trace_to_jsonl(const Trace& trace) {
  std::ostringstream out;
  for (const Segment& s : trace.segments) {
    Json rates = Json::object();
    for (const auto& [id, r] : s.rates) rates[std::to_string(id)] = to_string(r);
    Json line = {{"start", to_string(s.start)}, {"end", to_string(s.end)}, {"front", s.front},
                 {"W", to_string(s.unfinished_weight)}, {"rates", rates}};
    out << line.dump() << "\n";
  }
  return out.str();
}

std::string result_to_csv(const ScheduleResult& result) {
  std::ostringstream out;
  out << "job_id,completion_num,completion_den\n";
  for (std::size_t id = 0; id < result.completion.size(); ++id) {
    const Rational& c = result.completion[id];
    out << id << "," << c.get_num().get_str() << "," << c.get_den().get_str() << "\n";
  }
  return out.str();
}

}  // namespace ncsched
