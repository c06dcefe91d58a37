// Small helpers and independent reference computations shared by the tests.
#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "ncsched/core/instance.hpp"
#include "ncsched/harness/random_instances.hpp"

namespace test {

using ncsched::Instance;
using ncsched::InstanceBuilder;
using ncsched::JobId;
using ncsched::Rational;

inline Rational Q(const char* text) { return ncsched::parse_rational(text); }
inline Rational Q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}
inline Rational Q(int num) { return Rational(num); }

/// Chains given as lists of (p, w) integers.
inline Instance chains(const std::vector<std::vector<std::pair<long, long>>>& spec) {
  InstanceBuilder b;
  for (const auto& c : spec) {
    std::vector<std::pair<Rational, Rational>> pw;
    for (auto [p, w] : c) pw.emplace_back(Rational(p), Rational(w));
    b.chain(pw);
  }
  return b.build();
}

inline Instance independent(const std::vector<std::pair<long, long>>& jobs) {
  InstanceBuilder b;
  for (auto [p, w] : jobs) b.add(p, w);
  return b.build();
}

inline ncsched::harness::RandomModel model(ncsched::harness::RandomKind kind, std::size_t n_max, bool unit_p = false) {
  ncsched::harness::RandomModel m;
  m.kind = kind;
  m.n_min = 1;
  m.n_max = n_max;
  if (unit_p) m.p = {1, 1, 1};
  return m;
}

/// Transitive closure by plain DFS, independent of the library bitsets.
inline std::vector<std::vector<bool>> closure(const Instance& inst) {
  std::size_t n = inst.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (JobId s = 0; s < n; ++s) {
    std::vector<JobId> stack{s};
    while (!stack.empty()) {
      JobId v = stack.back();
      stack.pop_back();
      for (JobId u : inst.successors(v)) {
        if (!r[s][u]) {
          r[s][u] = true;
          stack.push_back(u);
        }
      }
    }
  }
  return r;
}

/// Largest antichain by subset enumeration.
inline std::size_t brute_width(const Instance& inst) {
  auto r = closure(inst);
  std::size_t n = inst.size(), best = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::size_t count = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (count <= best) continue;
    bool ok = true;
    for (JobId a = 0; a < n && ok; ++a) {
      if (!((mask >> a) & 1)) continue;
      for (JobId b = 0; b < n && ok; ++b) {
        if (a != b && ((mask >> b) & 1) && r[a][b]) ok = false;
      }
    }
    if (ok) best = count;
  }
  return best;
}

/// Visits every linear extension of the precedence order.
inline void for_each_linear_extension(const Instance& inst, const std::function<void(const std::vector<JobId>&)>& f) {
  std::size_t n = inst.size();
  std::vector<std::size_t> indeg(n);
  for (JobId j = 0; j < n; ++j) indeg[j] = inst.predecessors(j).size();
  std::vector<JobId> order;
  std::vector<bool> used(n, false);
  std::function<void()> rec = [&] {
    if (order.size() == n) {
      f(order);
      return;
    }
    for (JobId j = 0; j < n; ++j) {
      if (used[j] || indeg[j] != 0) continue;
      used[j] = true;
      order.push_back(j);
      for (JobId s : inst.successors(j)) --indeg[s];
      rec();
      for (JobId s : inst.successors(j)) ++indeg[s];
      order.pop_back();
      used[j] = false;
    }
  };
  rec();
}

inline Rational order_cost(const Instance& inst, const std::vector<JobId>& order, const std::vector<Rational>& w) {
  Rational t(0), total(0);
  for (JobId j : order) {
    t += inst.p(j);
    total += w[j] * t;
  }
  return total;
}

inline std::vector<Rational> weights(const Instance& inst) {
  std::vector<Rational> w;
  for (const auto& j : inst.jobs()) w.push_back(j.w);
  return w;
}

/// Single-machine optimum by enumerating linear extensions.
inline Rational brute_opt(const Instance& inst) {
  std::vector<Rational> w = weights(inst);
  bool first = true;
  Rational best(0);
  for_each_linear_extension(inst, [&](const std::vector<JobId>& o) {
    Rational c = order_cost(inst, o, w);
    if (first || c < best) best = c;
    first = false;
  });
  return best;
}

}  // namespace test
