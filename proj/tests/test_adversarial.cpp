#include <doctest.h>

#include "ncsched/adversarial/families.hpp"
#include "ncsched/core/structure.hpp"
#include "ncsched/engine/simulate.hpp"
#include "ncsched/error.hpp"
#include "ncsched/oracles/oracles.hpp"
#include "ncsched/policies/basic.hpp"
#include "ncsched/policies/follow.hpp"
#include "ncsched/policies/orders.hpp"
#include "ncsched/policies/weights.hpp"
#include "ncsched/predictions/ground_truth.hpp"
#include "support.hpp"

using namespace ncsched;
using namespace ncsched::adversarial;
using predictions::Model;
using test::Q;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an ncsched::Error");
  return Errc::Io;
}

Rational objective(const Instance& inst, PolicyPtr p) { return simulate(inst, *p).result.objective; }

policies::WeightTable zero_static(const Instance& inst) {
  policies::WeightTable t;
  for (JobId h : inst.sources()) t[h] = 0;
  return t;
}

}  // namespace

TEST_CASE("hidden chain") {
  FamilySpec f = gen_hidden_chain(3, 2);
  CHECK(f.instance.size() == 3);
  CHECK(f.instance.sources() == std::vector<JobId>{0, 1});
  CHECK(f.instance.successors(1) == std::vector<JobId>{2});
  CHECK(f.instance.w(2) == 1);
  CHECK(f.instance.w(0) == 0);
  CHECK(code_of([] { gen_hidden_chain(3, 0); }) == Errc::OutOfRange);
  CHECK(code_of([] { gen_hidden_chain(3, 3); }) == Errc::OutOfRange);

  FamilySpec worst = gen_hidden_chain(101, 100);
  Rational opt = oracles::opt_chain_exact(worst.instance).objective;
  CHECK(opt == worst.reference.at("opt"));
  Rational alg = objective(worst.instance, policies::equal_share());
  // all visible jobs finish together at n - 1, the weighted one a unit later
  CHECK(alg == 101);
  CHECK(alg / opt >= Q(101, 2));

  // the id drain finds the hidden job first when it hangs under job 1
  FamilySpec lucky = gen_hidden_chain(101, 1);
  CHECK(objective(lucky.instance, policies::wrr_chains(zero_static(lucky.instance))) == 2);
  CHECK(objective(worst.instance, policies::wrr_chains(zero_static(worst.instance))) == 101);
}

TEST_CASE("out-tree with a hidden weight") {
  FamilySpec f = gen_outtree_static(4, 2);
  CHECK(f.instance.size() == 5);
  CHECK(f.instance.successors(0).size() == 3);
  CHECK(f.instance.successors(2) == std::vector<JobId>{4});
  auto s = predictions::ground_truth(f.instance, Model::StaticWeights).weights();
  CHECK(s.size() == 1);
  CHECK(s.count(0) == 1);
  CHECK(code_of([] { gen_outtree_static(4, 4); }) == Errc::OutOfRange);

  CHECK(oracles::opt_brute_force(gen_outtree_static(4, 3).instance).objective == 3);
  for (std::int64_t n : {10, 40, 160}) {
    FamilySpec g = gen_outtree_static(n, n - 1);
    auto truth = predictions::ground_truth(g.instance, Model::AdaptiveWeights).weights();
    Rational alg = objective(g.instance, policies::wrr_adaptive(truth));
    CHECK(alg == 3);
    CHECK(alg / g.reference.at("opt") <= 4);
    // equal share keeps paying for the hidden job
    CHECK(objective(g.instance, policies::equal_share()) == n + 1);
  }
}

TEST_CASE("in-tree") {
  FamilySpec f = gen_intree(4, 7);
  CHECK(f.instance.size() == 17);
  CHECK(test::brute_width(f.instance) == 11);
  CHECK(code_of([] { gen_intree(0, 3); }) == Errc::OutOfRange);
  CHECK(code_of([] { gen_intree(3, 0); }) == Errc::OutOfRange);

  // v's leaves first (smallest ids) versus the chains first
  Rational adversarial = objective(f.instance, policies::follow_action_static({}));
  CHECK(adversarial >= 7 * 4);
  CHECK(adversarial == 4 * 11 + 10 + 16);
  std::vector<JobId> good;
  for (std::int64_t c = 0; c < 4; ++c) {
    good.push_back(static_cast<JobId>(7 + c));
    good.push_back(static_cast<JobId>(11 + c));
  }
  Rational smart = objective(f.instance, policies::follow_action_static(good));
  CHECK(smart == f.reference.at("opt"));
  CHECK(smart <= 3 * 17);

  for (auto [k, l] : std::vector<std::pair<int, int>>{{1, 1}, {2, 3}, {3, 3}, {2, 6}, {1, 8}, {3, 4}}) {
    FamilySpec g = gen_intree(k, l);
    CHECK(g.instance.size() == static_cast<std::size_t>(2 * k + l + 2));
    CHECK(oracles::opt_brute_force(g.instance).objective == g.reference.at("opt"));
    auto truth = predictions::ground_truth(g.instance, Model::AdaptiveWeights).weights();
    CHECK(objective(g.instance, policies::wrr_adaptive(truth)) == g.reference.at("wrr_adaptive_truth"));
  }
}

TEST_CASE("average lower bound") {
  FamilySpec f = gen_average_lb(3);
  CHECK(f.instance.size() == 9);
  CHECK(f.reference.at("opt_upper") == 22);
  CHECK(f.reference.at("alg_lower") == 30);
  CHECK(oracles::opt_chain_exact(f.instance).objective <= 22);
  // an average-blind sequential run in id order: singletons, then the chain
  CHECK(objective(f.instance, policies::follow_action_static({})) == 30);
  auto avg = predictions::ground_truth(f.instance, Model::Averages).weights();
  for (const auto& c : chains_of(f.instance)) CHECK(avg.at(c.front()) == 1);
  CHECK(code_of([] { gen_average_lb(1); }) == Errc::OutOfRange);
}

TEST_CASE("static order lower bound") {
  FamilySpec f = gen_static_order_lb(2, 2);
  auto cs = chains_of(f.instance);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].size() == 3);
  CHECK(cs[1].size() == 6);
  CHECK(f.instance.w(cs[0].front()) == 1);
  CHECK(f.instance.w(cs[1].back()) == 1);
  CHECK(f.reference.at("opt_ref") == 13);
  CHECK(f.reference.at("alg_lb") == 18);
  CHECK(code_of([] { gen_static_order_lb(2, 1); }) == Errc::NonIntegralLength);
  CHECK(code_of([] { gen_static_order_lb(3, 3); }) == Errc::NonIntegralLength);
  CHECK(code_of([] { gen_static_order_lb(1, 2); }) == Errc::OutOfRange);

  // strict rates 1/(H·c) over lengths d·H·c end chain c at d·H²·c²
  for (auto [omega, d] : std::vector<std::pair<int, int>>{{2, 2}, {3, 6}, {4, 12}}) {
    FamilySpec g = gen_static_order_lb(omega, d);
    auto ranking = predictions::ground_truth(g.instance, Model::StaticOrder).ranking();
    Simulation s = simulate(g.instance, *policies::order_static(ranking));
    Rational h = harmonic(static_cast<std::size_t>(omega));
    auto chains = chains_of(g.instance);
    for (std::size_t c = 0; c < chains.size(); ++c) {
      Rational pos(static_cast<unsigned long>(c + 1));
      CHECK(s.result.completion[chains[c].back()] == Rational(d * h * h * pos * pos));
    }
    CHECK(s.result.objective >= g.reference.at("alg_lb"));
    CHECK(oracles::opt_chain_exact(g.instance).objective <= g.reference.at("opt_ref"));
  }
}

TEST_CASE("every family validates and matches its claimed topology") {
  std::vector<FamilySpec> all;
  for (int n = 2; n <= 8; ++n) {
    for (int h = 1; h < n; ++h) {
      all.push_back(gen_hidden_chain(n, h));
      all.push_back(gen_outtree_static(n, h));
    }
  }
  for (int k = 1; k <= 4; ++k) {
    for (int l = 1; l <= 4; ++l) all.push_back(gen_intree(k, l));
  }
  for (int s = 2; s <= 5; ++s) all.push_back(gen_average_lb(s));
  all.push_back(gen_static_order_lb(2, 4));
  all.push_back(gen_static_order_lb(3, 12));
  for (const FamilySpec& f : all) {
    std::vector<RawJob> jobs;
    for (const Job& j : f.instance.jobs()) jobs.push_back({static_cast<std::int64_t>(j.id), j.p, j.w});
    std::vector<RawEdge> edges;
    for (const Edge& e : f.instance.edges()) {
      edges.push_back({static_cast<std::int64_t>(e.from), static_cast<std::int64_t>(e.to)});
    }
    CHECK(validate(jobs, edges).ok());
    Topology t = classify_topology(f.instance);
    CHECK(t.kind == f.topology.kind);
    CHECK(t.tree == f.topology.tree);
    Json side = f.sidecar();
    CHECK(side["nodes"] == f.instance.size());
    CHECK(side["family"] == f.family);
  }
  CHECK(generate("intree", {{"k", 2}, {"l", 3}}).instance.size() == 9);
  CHECK(code_of([] { generate("nope", {}); }) == Errc::UnknownName);
  CHECK(code_of([] { generate("intree", {{"k", 2}}); }) == Errc::OutOfRange);
}
