#include "ncsched/core/structure.hpp"

#include <limits>
#include <numeric>
#include <queue>

#include "ncsched/error.hpp"

namespace ncsched {

std::string topology_name(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::Chains: return "chains";
    case TopologyKind::OutForest: return "out_forest";
    case TopologyKind::InForest: return "in_forest";
    case TopologyKind::GeneralDag: return "general";
  }
  return "general";
}

std::size_t component_count(const Instance& instance) {
  std::size_t n = instance.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t comps = n;
  for (const Edge& e : instance.edges()) {
    std::size_t a = find(e.from), b = find(e.to);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps;
}

Topology classify_topology(const Instance& instance) {
  bool in_le1 = true, out_le1 = true;
  for (JobId v = 0; v < instance.size(); ++v) {
    if (instance.predecessors(v).size() > 1) in_le1 = false;
    if (instance.successors(v).size() > 1) out_le1 = false;
  }
  Topology t;
  if (in_le1 && out_le1) t.kind = TopologyKind::Chains;
  else if (in_le1) t.kind = TopologyKind::OutForest;
  else if (out_le1) t.kind = TopologyKind::InForest;
  else t.kind = TopologyKind::GeneralDag;
  t.tree = component_count(instance) == 1;
  return t;
}

std::vector<JobId> topological_order(const Instance& instance) {
  std::size_t n = instance.size();
  std::vector<std::size_t> indeg(n);
  for (JobId v = 0; v < n; ++v) indeg[v] = instance.predecessors(v).size();
  std::priority_queue<JobId, std::vector<JobId>, std::greater<>> ready;
  for (JobId v = 0; v < n; ++v) {
    if (indeg[v] == 0) ready.push(v);
  }
  std::vector<JobId> order;
  order.reserve(n);
  while (!ready.empty()) {
    JobId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (JobId u : instance.successors(v)) {
      if (--indeg[u] == 0) ready.push(u);
    }
  }
  return order;
}

Reachability::Reachability(const Instance& instance) {
  std::size_t n = instance.size();
  std::size_t words = (n + 63) / 64;
  rows_.assign(n, std::vector<std::uint64_t>(words, 0));
  std::vector<JobId> order = topological_order(instance);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    JobId v = *it;
    rows_[v][v >> 6] |= std::uint64_t{1} << (v & 63);
    for (JobId u : instance.successors(v)) {
      for (std::size_t k = 0; k < words; ++k) rows_[v][k] |= rows_[u][k];
    }
  }
}

std::vector<JobId> Reachability::members(JobId v) const {
  std::vector<JobId> out;
  for (JobId u = 0; u < rows_.size(); ++u) {
    if (reaches(v, u)) out.push_back(u);
  }
  return out;
}

namespace {

// Hopcroft-Karp on the strict comparability graph (left u -> right v iff u reaches v, u != v).
std::size_t max_matching(const std::vector<std::vector<JobId>>& adj, std::size_t n) {
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> match_l(n, none), match_r(n, none), dist(n);

  auto bfs = [&]() {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t u = 0; u < n; ++u) {
      if (match_l[u] == none) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = none;
      }
    }
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop();
      for (std::size_t v : adj[u]) {
        std::size_t w = match_r[v];
        if (w == none) {
          found = true;
        } else if (dist[w] == none) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };

  // iterative DFS along the layered graph
  std::vector<std::size_t> it(n);
  auto dfs = [&](std::size_t root) {
    std::vector<std::size_t> path{root};
    while (!path.empty()) {
      std::size_t u = path.back();
      if (it[u] == adj[u].size()) {
        dist[u] = none;
        path.pop_back();
        continue;
      }
      std::size_t v = adj[u][it[u]];
      std::size_t w = match_r[v];
      if (w == none) {
        // augment along the path
        for (std::size_t i = path.size(); i-- > 0;) {
          std::size_t pu = path[i];
          std::size_t pv = adj[pu][it[pu]];
          match_r[pv] = pu;
          match_l[pu] = pv;
        }
        return true;
      }
      if (dist[w] == dist[u] + 1) {
        path.push_back(w);
      } else {
        ++it[u];
      }
    }
    return false;
  };

  std::size_t matching = 0;
  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (std::size_t u = 0; u < n; ++u) {
      if (match_l[u] == none && dfs(u)) ++matching;
    }
  }
  return matching;
}

}  // namespace

std::size_t width(const Instance& instance) {
  std::size_t n = instance.size();
  if (n == 0) throw Error(Errc::EmptyInstance, "width of an empty instance");
  Reachability reach(instance);
  std::vector<std::vector<JobId>> adj(n);
  for (JobId u = 0; u < n; ++u) {
    for (JobId v = 0; v < n; ++v) {
      if (u != v && reach.reaches(u, v)) adj[u].push_back(v);
    }
  }
  return n - max_matching(adj, n);
}

SuccessorAggregate successor_aggregate(const Instance& instance, JobId v) {
  if (!instance.contains(v)) throw Error(Errc::UnknownId, "unknown job id " + std::to_string(v));
  std::vector<bool> seen(instance.size(), false);
  std::vector<JobId> stack{v};
  seen[v] = true;
  SuccessorAggregate agg;
  agg.root = v;
  while (!stack.empty()) {
    JobId x = stack.back();
    stack.pop_back();
    for (JobId u : instance.successors(x)) {
      if (!seen[u]) {
        seen[u] = true;
        stack.push_back(u);
      }
    }
  }
  for (JobId u = 0; u < instance.size(); ++u) {
    if (!seen[u]) continue;
    agg.members.push_back(u);
    agg.weight += instance.w(u);
    agg.processing += instance.p(u);
  }
  if (agg.processing != 0) agg.average = Rational(agg.weight / agg.processing);
  return agg;
}

std::vector<Rational> successor_weights(const Instance& instance) {
  std::size_t n = instance.size();
  std::vector<Rational> out(n, Rational(0));
  Topology topo = classify_topology(instance);
  std::vector<JobId> order = topological_order(instance);
  if (topo.is_out_forest()) {
    // successor sets of distinct children are disjoint, so sums compose
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      Rational s = instance.w(*it);
      for (JobId u : instance.successors(*it)) s += out[u];
      out[*it] = s;
    }
    return out;
  }
  Reachability reach(instance);
  for (JobId v = 0; v < n; ++v) {
    Rational s(0);
    for (JobId u = 0; u < n; ++u) {
      if (reach.reaches(v, u)) s += instance.w(u);
    }
    out[v] = s;
  }
  return out;
}

std::vector<std::vector<JobId>> chains_of(const Instance& instance) {
  if (!classify_topology(instance).is_chains()) {
    throw Error(Errc::TopologyMismatch, "instance is not a set of chains");
  }
  std::vector<std::vector<JobId>> chains;
  for (JobId head : instance.sources()) {
    std::vector<JobId> c{head};
    while (!instance.successors(c.back()).empty()) c.push_back(instance.successors(c.back()).front());
    chains.push_back(std::move(c));
  }
  return chains;
}

}  // namespace ncsched
