#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "ncsched/core/instance.hpp"
#include "ncsched/engine/policy.hpp"

namespace ncsched {

struct Segment {
  Rational start{0};
  Rational end{0};
  std::vector<JobId> front;  // ascending
  Rational unfinished_weight{0};  // W(t) on [start, end)
  RateVector rates;  // every front job, zeros included

  Rational length() const { return end - start; }
  const Rational& rate(JobId id) const;
};

struct TimedEvent {
  JobId id = 0;
  Rational time{0};
};

struct Trace {
  std::vector<Segment> segments;
  std::vector<TimedEvent> completions;  // in completion order
  std::vector<TimedEvent> reveals;  // in reveal order
  std::size_t machines = 1;
};

struct ScheduleResult {
  std::vector<Rational> completion;  // indexed by job id
  Rational objective{0};
  Rational makespan{0};
};

struct Simulation {
  ScheduleResult result;
  Trace trace;
};

struct SimulateOptions {
  // Consecutive zero-rate segments tolerated when the policy asked for a
  // wake-up. Without a wake-up, any all-zero query is a stall.
  std::size_t idle_guard = 100000;
  // Observer called with each view handed to the policy (tests use it).
  std::function<void(const PolicyView&)> on_view;
};

/// Runs `policy` (queried at every event) to completion on `m` machines.
Simulation simulate(const Instance& instance, Policy& policy, std::size_t m = 1,
                    const SimulateOptions& options = {});

Rational objective_of(const Instance& instance, const std::vector<Rational>& completion);

/// One JSON object per line per segment.
std::string trace_to_jsonl(const Trace& trace);
/// Header job_id,completion_num,completion_den.
std::string result_to_csv(const ScheduleResult& result);

}  // namespace ncsched
