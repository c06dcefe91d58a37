#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "ncsched/core/json_io.hpp"
#include "ncsched/core/structure.hpp"

namespace ncsched::adversarial {

struct FamilySpec {
  std::string family;
  std::map<std::string, std::int64_t> params;
  Instance instance;
  Topology topology;  // what the construction claims
  std::map<std::string, Rational> reference;  // closed-form values where known

  /// {"family","params","nodes","topology","reference"} for the gen sidecar.
  Json sidecar() const;
};

/// n - 1 zero-weight unit jobs; visible job h (1-based, id h - 1) has a unit
/// successor of weight 1 (id n - 1). Throws OutOfRange unless 1 ≤ h ≤ n - 1.
FamilySpec gen_hidden_chain(std::int64_t n, std::int64_t h);

/// gen_hidden_chain under a zero-weight unit root (id 0); visible job h has id h,
/// the weighted job id n.
FamilySpec gen_outtree_static(std::int64_t n, std::int64_t h);

/// k two-job chains (leaf w = 0, inner w = 1) and l zero-weight leaves under v
/// (w = 1), all into the root r (w = 0). v's leaves take the smallest ids.
FamilySpec gen_intree(std::int64_t k, std::int64_t l);

/// s - 1 unit singletons of weight 1 (ids 0..s-2) and one chain
/// [1, n - s, 0, ..., 0] with n = s², so every chain averages 1.
FamilySpec gen_average_lb(std::int64_t s);

/// ω unit-job chains of length d·H_ω·c; chains 1..ω-1 carry weight 1 on the
/// first job, chain ω on its last job. Throws NonIntegralLength unless
/// lcm(1..ω) divides d.
FamilySpec gen_static_order_lb(std::int64_t omega, std::int64_t d);

/// Dispatch by family name with a parameter map. Throws UnknownName, OutOfRange.
FamilySpec generate(const std::string& family, const std::map<std::string, std::int64_t>& params);

}  // namespace ncsched::adversarial
