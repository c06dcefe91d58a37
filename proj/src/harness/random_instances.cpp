#include "ncsched/harness/random_instances.hpp"

#include <algorithm>
#include <numeric>

#include "ncsched/error.hpp"

namespace ncsched::harness {

std::string random_kind_name(RandomKind kind) {
  switch (kind) {
    case RandomKind::Chains: return "chains";
    case RandomKind::OutForest: return "out_forest";
    case RandomKind::InForest: return "in_forest";
    case RandomKind::General: return "general";
    case RandomKind::Independent: return "independent";
  }
  return "chains";
}

RandomKind random_kind_from_name(const std::string& name) {
  for (RandomKind k : {RandomKind::Chains, RandomKind::OutForest, RandomKind::InForest, RandomKind::General,
                       RandomKind::Independent}) {
    if (random_kind_name(k) == name) return k;
  }
  throw Error(Errc::UnknownName, "unknown random model '" + name + "'");
}

namespace {

Json grid_to_json(const Grid& g) { return {{"lo", g.lo}, {"hi", g.hi}, {"den", g.den}}; }

Grid grid_from_json(const Json& doc, Grid g) {
  if (!doc.is_object()) throw Error(Errc::Parse, "grid must be an object");
  g.lo = doc.value("lo", g.lo);
  g.hi = doc.value("hi", g.hi);
  g.den = doc.value("den", g.den);
  if (g.den <= 0 || g.lo > g.hi || g.lo < 0) throw Error(Errc::OutOfRange, "grid needs 0 <= lo <= hi and den > 0");
  return g;
}

Rational draw(const Grid& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> dist(g.lo, g.hi);
  Rational r(mpz_class(std::to_string(dist(rng))), mpz_class(std::to_string(g.den)));
  r.canonicalize();
  return r;
}

bool coin(double prob, std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0, 1)(rng) < prob; }

}  // namespace

Json random_model_to_json(const RandomModel& m) {
  return {{"kind", random_kind_name(m.kind)}, {"n_min", m.n_min},   {"n_max", m.n_max},
          {"p", grid_to_json(m.p)},           {"w", grid_to_json(m.w)}, {"attach", m.attach},
          {"edge_probability", m.edge_probability}, {"shuffle_ids", m.shuffle_ids}};
}

RandomModel random_model_from_json(const Json& doc) {
  if (!doc.is_object()) throw Error(Errc::Parse, "random model must be an object");
  RandomModel m;
  try {
    if (doc.contains("kind")) m.kind = random_kind_from_name(doc.at("kind").get<std::string>());
    m.n_min = doc.value("n_min", m.n_min);
    m.n_max = doc.value("n_max", m.n_max);
    if (doc.contains("p")) m.p = grid_from_json(doc.at("p"), m.p);
    if (doc.contains("w")) m.w = grid_from_json(doc.at("w"), m.w);
    m.attach = doc.value("attach", m.attach);
    m.edge_probability = doc.value("edge_probability", m.edge_probability);
    m.shuffle_ids = doc.value("shuffle_ids", m.shuffle_ids);
  } catch (const Json::exception& e) {
    throw Error(Errc::Parse, std::string("random model: ") + e.what());
  }
  if (m.n_min < 1 || m.n_min > m.n_max) throw Error(Errc::OutOfRange, "random model needs 1 <= n_min <= n_max");
  return m;
}

Instance random_instance(const RandomModel& model, std::mt19937_64& rng) {
  std::size_t n = std::uniform_int_distribution<std::size_t>(model.n_min, model.n_max)(rng);
  std::vector<std::pair<Rational, Rational>> jobs;
  for (std::size_t i = 0; i < n; ++i) {
    Rational p = draw(model.p, rng);
    Rational w = draw(model.w, rng);
    jobs.emplace_back(p, w);
  }
  // edges over build order 0..n-1, always forward
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  switch (model.kind) {
    case RandomKind::Independent: break;
    case RandomKind::Chains:
      for (std::size_t i = 1; i < n; ++i) {
        if (coin(model.attach, rng)) edges.emplace_back(i - 1, i);
      }
      break;
    case RandomKind::OutForest:
    case RandomKind::InForest:
      for (std::size_t i = 1; i < n; ++i) {
        if (!coin(model.attach, rng)) continue;
        std::size_t parent = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
        if (model.kind == RandomKind::OutForest) {
          edges.emplace_back(parent, i);
        } else {
          // reversed build order keeps edges forward: i's single successor is earlier
          edges.emplace_back(n - 1 - i, n - 1 - parent);
        }
      }
      break;
    case RandomKind::General:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (coin(model.edge_probability, rng)) edges.emplace_back(i, j);
        }
      }
      break;
  }
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), 0);
  if (model.shuffle_ids) std::shuffle(label.begin(), label.end(), rng);
  std::vector<std::pair<Rational, Rational>> relabeled(n);
  for (std::size_t i = 0; i < n; ++i) relabeled[label[i]] = jobs[i];
  InstanceBuilder b;
  for (const auto& [p, w] : relabeled) b.add(p, w);
  for (const auto& [u, v] : edges) b.edge(label[u], label[v]);
  return b.build();
}

}  // namespace ncsched::harness
