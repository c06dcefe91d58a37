#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncsched/rational.hpp"

namespace ncsched {

using JobId = std::size_t;

struct Job {
  JobId id = 0;
  Rational p{0};  // processing requirement, hidden from policies
  Rational w{0};  // weight
};

/// `from` precedes `to`.
struct Edge {
  JobId from = 0;
  JobId to = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Unvalidated input as read from a file or produced by a generator.
struct RawJob {
  std::int64_t id = 0;
  Rational p{0};
  Rational w{0};
};

struct RawEdge {
  std::int64_t from = 0;
  std::int64_t to = 0;
};

enum class DefectKind {
  Cyclic,
  DanglingEdge,
  DuplicateId,
  DuplicateEdge,
  NegativeValue,
  NonDenseIds,
};

std::string defect_kind_name(DefectKind kind);

struct Defect {
  DefectKind kind;
  std::vector<std::int64_t> ids;  // offending job ids (for edges: the endpoints)
  std::string describe() const;
};

struct Validation;

/// Immutable weighted precedence DAG with dense ids 0..n-1.
class Instance {
 public:
  Instance() = default;

  std::size_t size() const { return jobs_.size(); }
  bool empty() const { return jobs_.empty(); }
  const std::vector<Job>& jobs() const { return jobs_; }
  const Job& job(JobId id) const;
  const Rational& p(JobId id) const { return job(id).p; }
  const Rational& w(JobId id) const { return job(id).w; }

  /// Edges sorted by (from, to).
  const std::vector<Edge>& edges() const { return edges_; }
  /// Ascending ids.
  const std::vector<JobId>& successors(JobId id) const;
  const std::vector<JobId>& predecessors(JobId id) const;

  const Rational& total_weight() const { return total_weight_; }
  const Rational& total_processing() const { return total_processing_; }

  /// Jobs without predecessors, ascending.
  std::vector<JobId> sources() const;

  bool contains(JobId id) const { return id < jobs_.size(); }

  friend Validation validate(const std::vector<RawJob>& jobs, const std::vector<RawEdge>& edges);

 private:
  Instance(std::vector<Job> jobs, std::vector<Edge> edges);

  std::vector<Job> jobs_;
  std::vector<Edge> edges_;
  std::vector<std::vector<JobId>> succ_;
  std::vector<std::vector<JobId>> pred_;
  Rational total_weight_{0};
  Rational total_processing_{0};
};

struct Validation {
  std::optional<Instance> instance;
  std::vector<Defect> defects;
  bool ok() const { return defects.empty(); }
};

/// Collects every defect; the instance is present only when there are none.
Validation validate(const std::vector<RawJob>& jobs, const std::vector<RawEdge>& edges);

/// Throws Error{InvalidInstance} listing all defects.
Instance make_instance(const std::vector<RawJob>& jobs, const std::vector<RawEdge>& edges);

/// Convenience for tests and generators: ids are assigned 0..n-1 in order.
class InstanceBuilder {
 public:
  JobId add(const Rational& p, const Rational& w);
  InstanceBuilder& edge(JobId from, JobId to);
  /// Appends a chain of jobs and returns their ids.
  std::vector<JobId> chain(const std::vector<std::pair<Rational, Rational>>& pw);
  std::size_t size() const { return jobs_.size(); }
  Instance build() const;

 private:
  std::vector<RawJob> jobs_;
  std::vector<RawEdge> edges_;
};

}  // namespace ncsched
