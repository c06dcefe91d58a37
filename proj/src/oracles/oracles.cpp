#include "ncsched/oracles/oracles.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>

#include "ncsched/core/structure.hpp"
#include "ncsched/error.hpp"

namespace ncsched::oracles {

std::string solver_name(Solver solver) {
  return solver == Solver::ChainExact ? "chain_exact" : "brute_force";
}

std::vector<Rational> sequence_completions(const Instance& instance, const std::vector<JobId>& order) {
  std::vector<Rational> c(instance.size(), Rational(0));
  Rational t(0);
  for (JobId j : order) {
    t += instance.p(j);
    c.at(j) = t;
  }
  return c;
}

Rational sequence_objective(const Instance& instance, const std::vector<JobId>& order,
                            const std::vector<Rational>& weights) {
  Rational t(0), total(0);
  for (JobId j : order) {
    t += instance.p(j);
    total += weights.at(j) * t;
  }
  return total;
}

Rational sequence_objective(const Instance& instance, const std::vector<JobId>& order) {
  std::vector<Rational> w;
  for (const Job& j : instance.jobs()) w.push_back(j.w);
  return sequence_objective(instance, order, w);
}

namespace {

struct Block {
  Rational p{0};
  Rational w{0};
  std::size_t first = 0;  // index range inside the chain
  std::size_t last = 0;
};

// sign of ratio(a) - ratio(b), with p = 0 meaning +infinity
int compare_ratio(const Block& a, const Block& b) {
  bool ai = a.p == 0, bi = b.p == 0;
  if (ai || bi) return ai == bi ? 0 : (ai ? 1 : -1);
  return cmp(Rational(a.w * b.p), Rational(b.w * a.p));
}

}  // namespace

OptResult opt_chain_exact(const Instance& instance) {
  std::vector<std::vector<JobId>> chains = chains_of(instance);
  std::vector<std::vector<Block>> blocks(chains.size());
  for (std::size_t c = 0; c < chains.size(); ++c) {
    auto& stack = blocks[c];
    for (std::size_t i = 0; i < chains[c].size(); ++i) {
      JobId j = chains[c][i];
      stack.push_back({instance.p(j), instance.w(j), i, i});
      // merge while the later block is strictly denser than its predecessor
      while (stack.size() >= 2 && compare_ratio(stack.back(), stack[stack.size() - 2]) > 0) {
        Block top = stack.back();
        stack.pop_back();
        stack.back().p += top.p;
        stack.back().w += top.w;
        stack.back().last = top.last;
      }
    }
  }
  std::vector<std::size_t> next(chains.size(), 0);
  OptResult result;
  result.solver = Solver::ChainExact;
  while (true) {
    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < chains.size(); ++c) {
      if (next[c] == blocks[c].size()) continue;
      if (!best) {
        best = c;
        continue;
      }
      const Block& a = blocks[c][next[c]];
      const Block& b = blocks[*best][next[*best]];
      int r = compare_ratio(a, b);
      if (r > 0 || (r == 0 && a.p < b.p)) best = c;
    }
    if (!best) break;
    const Block& blk = blocks[*best][next[*best]++];
    for (std::size_t i = blk.first; i <= blk.last; ++i) result.order.push_back(chains[*best][i]);
  }
  result.objective = sequence_objective(instance, result.order);
  return result;
}

namespace {

struct DownsetTables {
  std::size_t n = 0;
  std::vector<std::uint32_t> pred_mask;
  std::vector<std::uint32_t> succ_mask;
  std::vector<Rational> processing;  // p(mask)
  std::vector<bool> downset;
};

DownsetTables downset_tables(const Instance& instance) {
  DownsetTables t;
  t.n = instance.size();
  t.pred_mask.assign(t.n, 0);
  t.succ_mask.assign(t.n, 0);
  for (const Edge& e : instance.edges()) {
    t.pred_mask[e.to] |= 1u << e.from;
    t.succ_mask[e.from] |= 1u << e.to;
  }
  std::size_t states = std::size_t{1} << t.n;
  t.processing.assign(states, Rational(0));
  t.downset.assign(states, false);
  t.downset[0] = true;
  for (std::size_t mask = 1; mask < states; ++mask) {
    std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
    t.processing[mask] = t.processing[mask & (mask - 1)] + instance.p(low);
    bool ok = true;
    for (std::size_t j = 0; j < t.n && ok; ++j) {
      if ((mask >> j & 1u) && (t.pred_mask[j] & ~mask)) ok = false;
    }
    t.downset[mask] = ok;
  }
  return t;
}

void require_brute_force_size(const Instance& instance, std::size_t limit) {
  if (instance.size() > limit) {
    throw Error(Errc::TooLarge, "brute force limited to " + std::to_string(limit) + " jobs, instance has " +
                                    std::to_string(instance.size()));
  }
}

OptResult brute_force_single(const Instance& instance) {
  DownsetTables t = downset_tables(instance);
  std::size_t states = std::size_t{1} << t.n;
  std::vector<std::optional<Rational>> best(states);
  std::vector<std::size_t> last(states, 0);
  best[0] = Rational(0);
  for (std::size_t mask = 1; mask < states; ++mask) {
    if (!t.downset[mask]) continue;
    for (std::size_t j = 0; j < t.n; ++j) {
      if (!(mask >> j & 1u) || (t.succ_mask[j] & mask)) continue;
      std::size_t rest = mask & ~(std::size_t{1} << j);
      Rational v = *best[rest] + instance.w(j) * t.processing[mask];
      if (!best[mask] || v < *best[mask]) {
        best[mask] = v;
        last[mask] = j;
      }
    }
  }
  OptResult r;
  r.solver = Solver::BruteForce;
  r.objective = *best[states - 1];
  for (std::size_t mask = states - 1; mask != 0; mask &= ~(std::size_t{1} << last[mask])) {
    r.order.push_back(last[mask]);
  }
  std::reverse(r.order.begin(), r.order.end());
  return r;
}

class ListScheduleSearch {
 public:
  ListScheduleSearch(const Instance& instance, std::size_t machines)
      : inst_(instance), m_(machines), free_(machines, Rational(0)), completion_(instance.size(), Rational(0)) {
    for (JobId v = 0; v < inst_.size(); ++v) missing_.push_back(inst_.predecessors(v).size());
  }

  OptResult run() {
    dfs(Rational(0));
    OptResult r;
    r.solver = Solver::BruteForce;
    r.objective = *best_;
    r.order = best_order_;
    return r;
  }

 private:
  void dfs(const Rational& cost) {
    if (best_ && cost >= *best_) return;
    if (order_.size() == inst_.size()) {
      best_ = cost;
      best_order_ = order_;
      return;
    }
    for (JobId j = 0; j < inst_.size(); ++j) {
      if (scheduled(j) || missing_[j] != 0) continue;
      std::size_t machine = 0;
      for (std::size_t k = 1; k < m_; ++k) {
        if (free_[k] < free_[machine]) machine = k;
      }
      Rational ready(0);
      for (JobId u : inst_.predecessors(j)) ready = max(ready, completion_[u]);
      Rational saved_free = free_[machine];
      Rational start = max(saved_free, ready);
      Rational end = start + inst_.p(j);
      free_[machine] = end;
      completion_[j] = end;
      order_.push_back(j);
      for (JobId u : inst_.successors(j)) --missing_[u];
      dfs(Rational(cost + inst_.w(j) * end));
      for (JobId u : inst_.successors(j)) ++missing_[u];
      order_.pop_back();
      free_[machine] = saved_free;
    }
  }

  bool scheduled(JobId j) const { return std::find(order_.begin(), order_.end(), j) != order_.end(); }

  const Instance& inst_;
  std::size_t m_;
  std::vector<Rational> free_;
  std::vector<Rational> completion_;
  std::vector<std::size_t> missing_;
  std::vector<JobId> order_;
  std::optional<Rational> best_;
  std::vector<JobId> best_order_;
};

}  // namespace

OptResult opt_brute_force(const Instance& instance, std::size_t machines) {
  if (machines == 0) throw Error(Errc::OutOfRange, "machine count must be at least 1");
  if (instance.empty()) return OptResult{Rational(0), {}, Solver::BruteForce};
  if (machines == 1) {
    require_brute_force_size(instance, kBruteForceMaxJobs);
    return brute_force_single(instance);
  }
  require_brute_force_size(instance, kBruteForceMaxJobsParallel);
  return ListScheduleSearch(instance, machines).run();
}

namespace {

using LexCost = std::pair<Rational, Rational>;  // (base cost, measure cost)

bool lex_better(const Rational& b, const Rational& w, const std::optional<LexCost>& cur) {
  return !cur || b < cur->first || (b == cur->first && w > cur->second);
}

// Chains only: the downsets are position vectors, so the state space is the
// product of (length + 1) over chains rather than 2^n.
std::optional<Rational> chain_weighted_max(const std::vector<Rational>& measure, const std::vector<Rational>& base,
                                           const Instance& instance) {
  constexpr std::size_t kMaxStates = std::size_t{1} << 20;
  if (!classify_topology(instance).is_chains()) return std::nullopt;
  std::vector<std::vector<JobId>> chains = chains_of(instance);
  std::vector<std::size_t> radix;
  std::size_t states = 1;
  for (const auto& c : chains) {
    radix.push_back(c.size() + 1);
    if (states > kMaxStates / (c.size() + 1)) return std::nullopt;
    states *= c.size() + 1;
  }
  std::vector<std::optional<LexCost>> best(states);
  std::vector<Rational> processing(states, Rational(0));
  best[0] = LexCost(Rational(0), Rational(0));
  std::vector<std::size_t> pos(chains.size(), 0);
  for (std::size_t idx = 1; idx < states; ++idx) {
    // increment the mixed-radix counter
    for (std::size_t c = 0; c < pos.size(); ++c) {
      if (++pos[c] < radix[c]) break;
      pos[c] = 0;
    }
    std::size_t stride = 1;
    bool have_processing = false;
    for (std::size_t c = 0; c < pos.size(); stride *= radix[c], ++c) {
      if (pos[c] == 0) continue;
      JobId j = chains[c][pos[c] - 1];
      std::size_t prev = idx - stride;
      if (!have_processing) {
        processing[idx] = processing[prev] + instance.p(j);
        have_processing = true;
      }
      const LexCost& pc = *best[prev];
      Rational b = pc.first + base[j] * processing[idx];
      Rational w = pc.second + measure[j] * processing[idx];
      if (lex_better(b, w, best[idx])) best[idx] = LexCost(b, w);
    }
  }
  return best[states - 1]->second;
}

}  // namespace

Rational opt_weighted_max(const std::vector<Rational>& measure, const std::vector<Rational>& base,
                          const Instance& instance) {
  if (measure.size() != instance.size() || base.size() != instance.size()) {
    throw Error(Errc::OutOfRange, "weight vectors must cover every job");
  }
  if (instance.empty()) return Rational(0);
  if (instance.size() > kBruteForceMaxJobs) {
    if (std::optional<Rational> v = chain_weighted_max(measure, base, instance)) return *v;
  }
  require_brute_force_size(instance, kBruteForceMaxJobs);
  DownsetTables t = downset_tables(instance);
  std::size_t states = std::size_t{1} << t.n;
  // lexicographic: minimal base cost, then maximal measure cost
  std::vector<std::optional<std::pair<Rational, Rational>>> best(states);
  best[0] = std::make_pair(Rational(0), Rational(0));
  for (std::size_t mask = 1; mask < states; ++mask) {
    if (!t.downset[mask]) continue;
    for (std::size_t j = 0; j < t.n; ++j) {
      if (!(mask >> j & 1u) || (t.succ_mask[j] & mask)) continue;
      const auto& prev = *best[mask & ~(std::size_t{1} << j)];
      Rational b = prev.first + base[j] * t.processing[mask];
      Rational w = prev.second + measure[j] * t.processing[mask];
      if (!best[mask] || b < best[mask]->first || (b == best[mask]->first && w > best[mask]->second)) {
        best[mask] = std::make_pair(b, w);
      }
    }
  }
  return best[states - 1]->second;
}

OptResult optimal_order(const Instance& instance) {
  if (classify_topology(instance).is_chains()) return opt_chain_exact(instance);
  return opt_brute_force(instance, 1);
}

std::vector<Rational> chain_lengths(const Instance& instance) {
  std::vector<Rational> out(instance.size(), Rational(0));
  for (JobId v : topological_order(instance)) {
    Rational longest(0);
    for (JobId u : instance.predecessors(v)) longest = max(longest, out[u]);
    out[v] = longest + instance.p(v);
  }
  return out;
}

PreemptiveBound preemptive_lower_bound(const Instance& instance, std::size_t machines) {
  if (machines == 0) throw Error(Errc::OutOfRange, "machine count must be at least 1");
  PreemptiveBound b;
  std::vector<Rational> chain = chain_lengths(instance);
  for (const Job& j : instance.jobs()) b.path_bound += j.w * chain[j.id];
  b.single_machine_bound = optimal_order(instance).objective / Rational(static_cast<unsigned long>(machines));
  return b;
}

}  // namespace ncsched::oracles
