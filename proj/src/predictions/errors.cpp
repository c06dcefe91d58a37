#include "ncsched/predictions/errors.hpp"

#include <algorithm>
#include <set>

#include "ncsched/core/structure.hpp"
#include "ncsched/error.hpp"
#include "ncsched/oracles/oracles.hpp"

namespace ncsched::predictions {

Json ErrorReport::to_json() const {
  Json comps = Json::object();
  for (const auto& [k, v] : components) comps[k] = to_string(v);
  Json ps = Json::object();
  for (const auto& [k, v] : params) ps[k] = to_string(v);
  return {{"measure", measure}, {"value", to_string(value)}, {"components", comps}, {"params", ps}};
}

ErrorReport eta_inversions(const Instance& instance, const Ranking& sigma_hat) {
  std::vector<JobId> sigma = oracles::optimal_order(instance).order;
  std::size_t n = instance.size();
  std::vector<std::size_t> pos(n), pos_hat(n);
  for (std::size_t i = 0; i < n; ++i) pos[sigma[i]] = i;
  std::vector<bool> placed(n, false);
  std::size_t next = 0;
  for (JobId j : sigma_hat) {
    if (j < n && !placed[j]) {
      placed[j] = true;
      pos_hat[j] = next++;
    }
  }
  for (JobId j = 0; j < n; ++j) {
    if (!placed[j]) pos_hat[j] = next++;
  }
  Rational eta(0);
  for (JobId a = 0; a < n; ++a) {
    for (JobId b = 0; b < n; ++b) {
      if (pos[a] < pos[b] && pos_hat[a] > pos_hat[b]) {
        eta += instance.w(a) * instance.p(b) - instance.w(b) * instance.p(a);
      }
    }
  }
  ErrorReport r;
  r.measure = "eta";
  r.value = eta;
  return r;
}

ErrorReport lambda_error(const policies::PredictedChains& predicted, const Instance& actual) {
  std::vector<std::vector<JobId>> chains = chains_of(actual);
  for (const Job& j : actual.jobs()) {
    if (j.p != 1) throw Error(Errc::TopologyMismatch, "the input error is defined for unit jobs only");
  }
  std::map<JobId, const std::vector<JobId>*> actual_by_head;
  for (const auto& c : chains) actual_by_head[c.front()] = &c;
  std::map<JobId, const policies::PredictedChain*> predicted_by_head;
  for (const auto& c : predicted) {
    for (const auto& [p, w] : c.jobs) {
      if (p != 1) throw Error(Errc::TopologyMismatch, "the input error is defined for unit jobs only");
    }
    predicted_by_head[c.head] = &c;
  }
  std::set<JobId> heads;
  for (const auto& [h, c] : actual_by_head) heads.insert(h);
  for (const auto& [h, c] : predicted_by_head) heads.insert(h);

  // augmented shared job set: each matched pair padded to the longer length
  InstanceBuilder builder;
  std::vector<Rational> w, w_hat;
  for (JobId h : heads) {
    const std::vector<JobId>* a = actual_by_head.count(h) ? actual_by_head[h] : nullptr;
    const policies::PredictedChain* p = predicted_by_head.count(h) ? predicted_by_head[h] : nullptr;
    std::size_t len = std::max(a ? a->size() : 0, p ? p->jobs.size() : 0);
    std::vector<std::pair<Rational, Rational>> pw;
    for (std::size_t i = 0; i < len; ++i) {
      Rational wi = a && i < a->size() ? actual.w((*a)[i]) : Rational(0);
      Rational wh = p && i < p->jobs.size() ? p->jobs[i].second : Rational(0);
      w.push_back(wi);
      w_hat.push_back(wh);
      pw.emplace_back(Rational(1), wi);
    }
    builder.chain(pw);
  }
  Instance joint = builder.build();
  // Named after the prose: unexpected actual weight (w > ŵ) is measured
  // against the predicted optimum, absent predicted weight (ŵ > w) against
  // the actual one. The sum is the same under either labelling.
  std::vector<Rational> unexpected, absent;
  for (std::size_t j = 0; j < w.size(); ++j) {
    unexpected.push_back(max(w[j], w_hat[j]) - w_hat[j]);
    absent.push_back(max(w_hat[j], w[j]) - w[j]);
  }
  Rational gamma_u = oracles::opt_weighted_max(unexpected, w_hat, joint);
  Rational gamma_a = oracles::opt_weighted_max(absent, w, joint);
  ErrorReport r;
  r.measure = "lambda";
  r.value = Rational(gamma_u + gamma_a);
  r.components["gamma_u"] = gamma_u;
  r.components["gamma_a"] = gamma_a;
  return r;
}

ErrorReport distortion_error(const Instance& instance, const WeightTable& predicted) {
  std::vector<Rational> ws = successor_weights(instance);
  ErrorReport r;
  r.measure = "distortion";
  std::optional<Rational> over, under;
  bool infinite = false;
  for (JobId v = 0; v < instance.size(); ++v) {
    auto it = predicted.find(v);
    if (it == predicted.end()) {
      infinite = true;
      break;
    }
    const Rational& hat = it->second;
    if (hat == 0 && ws[v] == 0) continue;
    if (hat == 0 || ws[v] == 0) {
      infinite = true;
      break;
    }
    Rational o = hat / ws[v];
    Rational u = ws[v] / hat;
    if (!over || o > *over) over = o;
    if (!under || u > *under) under = u;
  }
  if (infinite) {
    r.value = ExtendedRational::infinity();
    r.components["over"] = ExtendedRational::infinity();
    r.components["under"] = ExtendedRational::infinity();
    return r;
  }
  Rational o = over.value_or(Rational(1));
  Rational u = under.value_or(Rational(1));
  r.components["over"] = o;
  r.components["under"] = u;
  r.value = Rational(o * u);
  return r;
}

ErrorReport l_eps_error(const Trace& trace, const std::vector<std::vector<JobId>>& history,
                        const Instance& instance, const Rational& epsilon) {
  if (epsilon <= 0) throw Error(Errc::OutOfRange, "epsilon must be positive");
  if (history.size() != trace.segments.size()) {
    throw Error(Errc::HistoryMismatch, "order history has " + std::to_string(history.size()) +
                                           " entries for " + std::to_string(trace.segments.size()) + " segments");
  }
  std::vector<Rational> ws = successor_weights(instance);
  Rational scale = Rational(1) + epsilon;
  std::size_t largest = 0;
  for (std::size_t s = 0; s < history.size(); ++s) {
    const std::vector<JobId>& order = history[s];
    std::vector<JobId> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != trace.segments[s].front) {
      throw Error(Errc::HistoryMismatch, "predicted order " + std::to_string(s) + " does not match the front");
    }
    for (std::size_t pj = 0; pj < order.size(); ++pj) {
      JobId j = order[pj];
      std::size_t count = 0;
      for (std::size_t pi = 0; pi <= pj; ++pi) {
        if (ws[j] >= scale * ws[order[pi]]) ++count;
      }
      largest = std::max(largest, count);
    }
  }
  Rational raw(static_cast<unsigned long>(largest));
  ErrorReport r;
  r.measure = "l_eps";
  r.value = max(max(scale, raw), Rational(1));
  r.components["raw_l"] = raw;
  r.params["epsilon"] = epsilon;
  return r;
}

}  // namespace ncsched::predictions
