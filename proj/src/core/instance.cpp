#include "ncsched/core/instance.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "ncsched/error.hpp"

namespace ncsched {

std::string defect_kind_name(DefectKind kind) {
  switch (kind) {
    case DefectKind::Cyclic: return "Cyclic";
    case DefectKind::DanglingEdge: return "DanglingEdge";
    case DefectKind::DuplicateId: return "DuplicateId";
    case DefectKind::DuplicateEdge: return "DuplicateEdge";
    case DefectKind::NegativeValue: return "NegativeValue";
    case DefectKind::NonDenseIds: return "NonDenseIds";
  }
  return "Unknown";
}

std::string Defect::describe() const {
  std::ostringstream out;
  out << defect_kind_name(kind) << "{";
  for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? "," : "") << ids[i];
  out << "}";
  return out.str();
}

Instance::Instance(std::vector<Job> jobs, std::vector<Edge> edges)
    : jobs_(std::move(jobs)), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  succ_.assign(jobs_.size(), {});
  pred_.assign(jobs_.size(), {});
  for (const Edge& e : edges_) {
    succ_[e.from].push_back(e.to);
    pred_[e.to].push_back(e.from);
  }
  for (auto& v : pred_) std::sort(v.begin(), v.end());
  for (const Job& j : jobs_) {
    total_weight_ += j.w;
    total_processing_ += j.p;
  }
}

const Job& Instance::job(JobId id) const {
  if (id >= jobs_.size()) throw Error(Errc::UnknownId, "unknown job id " + std::to_string(id));
  return jobs_[id];
}

const std::vector<JobId>& Instance::successors(JobId id) const {
  if (id >= jobs_.size()) throw Error(Errc::UnknownId, "unknown job id " + std::to_string(id));
  return succ_[id];
}

const std::vector<JobId>& Instance::predecessors(JobId id) const {
  if (id >= jobs_.size()) throw Error(Errc::UnknownId, "unknown job id " + std::to_string(id));
  return pred_[id];
}

std::vector<JobId> Instance::sources() const {
  std::vector<JobId> out;
  for (JobId v = 0; v < jobs_.size(); ++v) {
    if (pred_[v].empty()) out.push_back(v);
  }
  return out;
}

namespace {

// Tarjan's SCC over the well-formed edges; returns nontrivial components and self-loops.
std::vector<std::vector<std::int64_t>> cyclic_components(
    const std::vector<std::int64_t>& ids, const std::map<std::int64_t, std::vector<std::int64_t>>& adj) {
  std::map<std::int64_t, int> index, low;
  std::set<std::int64_t> on_stack;
  std::vector<std::int64_t> stack;
  std::vector<std::vector<std::int64_t>> out;
  int counter = 0;

  // iterative to survive deep chains
  for (std::int64_t root : ids) {
    if (index.count(root)) continue;
    std::vector<std::pair<std::int64_t, std::size_t>> work{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack.insert(root);
    while (!work.empty()) {
      auto& [v, next] = work.back();
      auto it = adj.find(v);
      const std::vector<std::int64_t> empty;
      const auto& out_edges = it == adj.end() ? empty : it->second;
      if (next < out_edges.size()) {
        std::int64_t u = out_edges[next++];
        if (!index.count(u)) {
          index[u] = low[u] = counter++;
          stack.push_back(u);
          on_stack.insert(u);
          work.emplace_back(u, 0);
        } else if (on_stack.count(u)) {
          low[v] = std::min(low[v], index[u]);
        }
        continue;
      }
      std::int64_t done = v;
      work.pop_back();
      if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<std::int64_t> comp;
        std::int64_t x;
        do {
          x = stack.back();
          stack.pop_back();
          on_stack.erase(x);
          comp.push_back(x);
        } while (x != done);
        bool self_loop = false;
        if (comp.size() == 1) {
          const auto& e = adj.count(done) ? adj.at(done) : std::vector<std::int64_t>{};
          self_loop = std::find(e.begin(), e.end(), done) != e.end();
        }
        if (comp.size() > 1 || self_loop) {
          std::sort(comp.begin(), comp.end());
          out.push_back(std::move(comp));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Validation validate(const std::vector<RawJob>& jobs, const std::vector<RawEdge>& edges) {
  Validation result;
  auto& defects = result.defects;

  std::map<std::int64_t, std::size_t> seen;
  for (const RawJob& j : jobs) seen[j.id]++;
  for (const auto& [id, count] : seen) {
    if (count > 1) defects.push_back({DefectKind::DuplicateId, {id}});
  }
  for (const RawJob& j : jobs) {
    if (j.p < 0 || j.w < 0) defects.push_back({DefectKind::NegativeValue, {j.id}});
  }
  {
    std::vector<std::int64_t> bad;
    std::int64_t n = static_cast<std::int64_t>(seen.size());
    for (const auto& [id, count] : seen) {
      if (id < 0 || id >= n) bad.push_back(id);
    }
    if (!bad.empty()) defects.push_back({DefectKind::NonDenseIds, bad});
  }

  std::set<std::pair<std::int64_t, std::int64_t>> edge_set;
  std::map<std::int64_t, std::vector<std::int64_t>> adj;
  for (const RawEdge& e : edges) {
    if (!seen.count(e.from) || !seen.count(e.to)) {
      defects.push_back({DefectKind::DanglingEdge, {e.from, e.to}});
      continue;
    }
    if (!edge_set.insert({e.from, e.to}).second) {
      defects.push_back({DefectKind::DuplicateEdge, {e.from, e.to}});
      continue;
    }
    adj[e.from].push_back(e.to);
  }
  std::vector<std::int64_t> ids;
  for (const auto& [id, count] : seen) ids.push_back(id);
  for (auto& comp : cyclic_components(ids, adj)) defects.push_back({DefectKind::Cyclic, std::move(comp)});

  if (!defects.empty()) return result;

  std::vector<Job> out_jobs(jobs.size());
  for (const RawJob& j : jobs) {
    JobId id = static_cast<JobId>(j.id);
    out_jobs[id] = Job{id, j.p, j.w};
  }
  std::vector<Edge> out_edges;
  out_edges.reserve(edge_set.size());
  for (const auto& [a, b] : edge_set) out_edges.push_back({static_cast<JobId>(a), static_cast<JobId>(b)});
  result.instance = Instance(std::move(out_jobs), std::move(out_edges));
  return result;
}

Instance make_instance(const std::vector<RawJob>& jobs, const std::vector<RawEdge>& edges) {
  Validation v = validate(jobs, edges);
  if (!v.ok()) {
    std::string msg = "invalid instance:";
    for (const Defect& d : v.defects) msg += " " + d.describe();
    throw Error(Errc::InvalidInstance, msg);
  }
  return std::move(*v.instance);
}

JobId InstanceBuilder::add(const Rational& p, const Rational& w) {
  JobId id = jobs_.size();
  jobs_.push_back({static_cast<std::int64_t>(id), p, w});
  return id;
}

InstanceBuilder& InstanceBuilder::edge(JobId from, JobId to) {
  edges_.push_back({static_cast<std::int64_t>(from), static_cast<std::int64_t>(to)});
  return *this;
}

std::vector<JobId> InstanceBuilder::chain(const std::vector<std::pair<Rational, Rational>>& pw) {
  std::vector<JobId> ids;
  for (const auto& [p, w] : pw) {
    JobId id = add(p, w);
    if (!ids.empty()) edge(ids.back(), id);
    ids.push_back(id);
  }
  return ids;
}

Instance InstanceBuilder::build() const { return make_instance(jobs_, edges_); }

}  // namespace ncsched
