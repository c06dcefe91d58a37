#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncsched/core/instance.hpp"

namespace ncsched {

enum class TopologyKind { Chains, OutForest, InForest, GeneralDag };

struct Topology {
  TopologyKind kind = TopologyKind::GeneralDag;
  bool tree = false;  // exactly one weakly connected component

  bool is_chains() const { return kind == TopologyKind::Chains; }
  /// Chains count as both forest kinds.
  bool is_out_forest() const { return kind == TopologyKind::Chains || kind == TopologyKind::OutForest; }
  bool is_in_forest() const { return kind == TopologyKind::Chains || kind == TopologyKind::InForest; }
};

std::string topology_name(TopologyKind kind);

Topology classify_topology(const Instance& instance);

/// Maximum antichain size via Dilworth: n minus a maximum matching in the
/// comparability bipartite graph of the transitive closure.
std::size_t width(const Instance& instance);

/// Number of weakly connected components.
std::size_t component_count(const Instance& instance);

/// Dense reachability bitsets; row v marks every job in S(v), v included.
class Reachability {
 public:
  explicit Reachability(const Instance& instance);
  bool reaches(JobId from, JobId to) const {
    return (rows_[from][to >> 6] >> (to & 63)) & 1u;
  }
  std::vector<JobId> members(JobId v) const;
  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<std::vector<std::uint64_t>> rows_;
};

struct SuccessorAggregate {
  JobId root = 0;
  std::vector<JobId> members;  // ascending, includes root
  Rational weight{0};
  Rational processing{0};
  std::optional<Rational> average;  // absent when processing is zero
};

SuccessorAggregate successor_aggregate(const Instance& instance, JobId v);

/// w(S(v)) for every job.
std::vector<Rational> successor_weights(const Instance& instance);

/// Chains as job sequences, ordered by head id. Throws TopologyMismatch unless chains.
std::vector<std::vector<JobId>> chains_of(const Instance& instance);

/// Topological order, smallest available id first.
std::vector<JobId> topological_order(const Instance& instance);

}  // namespace ncsched
