#pragma once

#include <map>
#include <string>
#include <vector>

#include "ncsched/core/instance.hpp"
#include "ncsched/engine/simulate.hpp"
#include "ncsched/predictions/bundle.hpp"

namespace ncsched::predictions {

struct ErrorReport {
  std::string measure;  // eta, lambda, distortion, l_eps
  ExtendedRational value;
  std::map<std::string, ExtendedRational> components;  // e.g. gamma_u, gamma_a, raw_l
  std::map<std::string, Rational> params;  // e.g. epsilon

  Json to_json() const;
};

/// Σ (w_{j'} p_j - w_j p_{j'}) over pairs with σ(j') < σ(j) and σ̂(j') > σ̂(j),
/// σ the oracle's optimal order. Jobs missing from σ̂ are appended by id,
/// phantom entries dropped. Throws TooLarge.
ErrorReport eta_inversions(const Instance& instance, const Ranking& sigma_hat);

/// Γ_u, Γ_a and Λ = Γ_u + Γ_a on the augmented unit-job chains. Chains are
/// matched by head id; an unmatched chain counts as empty on the other side.
/// Throws TopologyMismatch (non-chains or non-unit processing), TooLarge.
ErrorReport lambda_error(const policies::PredictedChains& predicted, const Instance& actual);

/// max_v Ŵ_v / w(S(v)) · max_v w(S(v)) / Ŵ_v. Pairs with both sides zero
/// are skipped; a one-sided zero or a missing prediction is infinite.
ErrorReport distortion_error(const Instance& instance, const WeightTable& predicted);

/// L(ε) over the per-query predicted orders of one run; the reported value is
/// max{1 + ε, L(ε), 1}, raw L(ε) in components["raw_l"]. Throws HistoryMismatch.
ErrorReport l_eps_error(const Trace& trace, const std::vector<std::vector<JobId>>& history,
                        const Instance& instance, const Rational& epsilon);

}  // namespace ncsched::predictions
