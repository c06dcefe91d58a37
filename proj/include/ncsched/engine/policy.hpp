#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ncsched/core/instance.hpp"

namespace ncsched {

struct FrontJob {
  JobId id = 0;
  Rational weight{0};
};

enum class ViewEventKind { Reveal, Complete };

/// What happened since the previous query, in causal order.
struct ViewEvent {
  ViewEventKind kind = ViewEventKind::Reveal;
  JobId id = 0;
  Rational weight{0};
  // For reveals: the completed job whose completion made this job available.
  // Absent for the initial front.
  std::optional<JobId> cause;
};

/// Everything a non-clairvoyant policy may observe. Never carries processing
/// times, successor lists, or jobs outside the current front.
struct PolicyView {
  Rational time{0};
  std::vector<FrontJob> front;  // ascending id
  std::vector<JobId> revealed;  // since last query, ascending
  std::vector<JobId> completed;  // since last query, ascending
  std::vector<ViewEvent> events;
  std::size_t machines = 1;

  bool in_front(JobId id) const;
  /// Throws UnknownId if `id` is not a front job.
  const Rational& weight_of(JobId id) const;
};

using RateVector = std::map<JobId, Rational>;

class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string label() const = 0;
  /// Called at t = 0 and after every event.
  virtual RateVector rates(const PolicyView& view) = 0;
  /// Absolute time at which the policy wants to be re-queried even if nothing
  /// completes. Only the time-sharing combinator needs this.
  virtual std::optional<Rational> wake_up() const { return std::nullopt; }
  /// Same configuration, initial state.
  virtual std::unique_ptr<Policy> fresh() const = 0;
};

using PolicyPtr = std::unique_ptr<Policy>;

/// Throws RateOnNonFrontJob or InfeasibleRates.
void check_rates(const RateVector& rates, const PolicyView& view);

}  // namespace ncsched
