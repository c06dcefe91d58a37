#pragma once

#include <string>
#include <vector>

#include "ncsched/core/instance.hpp"

namespace ncsched::oracles {

enum class Solver { ChainExact, BruteForce };

std::string solver_name(Solver solver);

struct OptResult {
  Rational objective{0};
  // m = 1: the processing sequence. m > 1: the list order of the best list schedule.
  std::vector<JobId> order;
  Solver solver = Solver::BruteForce;
};

inline constexpr std::size_t kBruteForceMaxJobs = 12;
inline constexpr std::size_t kBruteForceMaxJobsParallel = 8;

/// Ratio rule on chains: repeatedly take the unscheduled chain prefix of
/// largest w/p (p = 0 counts as infinite), ties by smaller p then chain head.
/// Throws TopologyMismatch.
OptResult opt_chain_exact(const Instance& instance);

/// Minimal Σ w_j C_j over nonpreemptive schedules. m = 1: dynamic program over
/// downsets (n ≤ 12). m ≥ 2: all list schedules (n ≤ 8). Throws TooLarge.
OptResult opt_brute_force(const Instance& instance, std::size_t machines = 1);

/// Among single-machine orders minimizing Σ base_j C_j, the maximum of
/// Σ measure_j C_j (n ≤ 12). Throws TooLarge.
Rational opt_weighted_max(const std::vector<Rational>& measure, const std::vector<Rational>& base,
                          const Instance& instance);

/// opt_chain_exact on chains, else opt_brute_force on one machine.
OptResult optimal_order(const Instance& instance);

/// Single-machine completion times of a sequence.
std::vector<Rational> sequence_completions(const Instance& instance, const std::vector<JobId>& order);
/// Σ weights_j C_j of a single-machine sequence; `weights` defaults to the instance's.
Rational sequence_objective(const Instance& instance, const std::vector<JobId>& order);
Rational sequence_objective(const Instance& instance, const std::vector<JobId>& order,
                            const std::vector<Rational>& weights);

/// chain_j: the largest total processing of a path ending in j (j included).
std::vector<Rational> chain_lengths(const Instance& instance);

struct PreemptiveBound {
  Rational path_bound{0};  // Σ w_j·chain_j
  Rational single_machine_bound{0};  // OPT_1 / m
  Rational value() const { return path_bound > single_machine_bound ? path_bound : single_machine_bound; }
};

/// Valid lower bound on the preemptive m-machine optimum.
PreemptiveBound preemptive_lower_bound(const Instance& instance, std::size_t machines);

}  // namespace ncsched::oracles
