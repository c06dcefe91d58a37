#include <doctest.h>

#include "ncsched/adversarial/families.hpp"
#include "ncsched/error.hpp"
#include "ncsched/oracles/oracles.hpp"
#include "support.hpp"

using namespace ncsched;
using namespace ncsched::oracles;
using test::Q;

namespace {

bool is_linear_extension(const Instance& inst, const std::vector<JobId>& order) {
  if (order.size() != inst.size()) return false;
  std::vector<std::size_t> pos(inst.size(), inst.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  for (JobId j = 0; j < inst.size(); ++j) {
    if (pos[j] == inst.size()) return false;
  }
  for (const Edge& e : inst.edges()) {
    if (pos[e.from] > pos[e.to]) return false;
  }
  return true;
}

// m-machine reference: DFS over (job, machine) placements in start order,
// separate from the library's list-schedule search.
Rational brute_parallel(const Instance& inst, std::size_t m) {
  std::size_t n = inst.size();
  std::vector<Rational> free(m, Rational(0));
  std::vector<std::optional<Rational>> done(n);
  std::optional<Rational> best;
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t placed, Rational cost) {
    if (best && cost >= *best) return;
    if (placed == n) {
      best = cost;
      return;
    }
    for (JobId j = 0; j < n; ++j) {
      if (done[j]) continue;
      Rational ready(0);
      bool ok = true;
      for (JobId q : inst.predecessors(j)) {
        if (!done[q]) {
          ok = false;
          break;
        }
        ready = max(ready, *done[q]);
      }
      if (!ok) continue;
      for (std::size_t k = 0; k < m; ++k) {
        // identical machines: skip a machine equal to an earlier one
        bool dup = false;
        for (std::size_t k2 = 0; k2 < k; ++k2) dup = dup || free[k2] == free[k];
        if (dup) continue;
        Rational start = max(ready, free[k]);
        Rational end = start + inst.p(j);
        Rational saved = free[k];
        free[k] = end;
        done[j] = end;
        rec(placed + 1, cost + inst.w(j) * end);
        done[j].reset();
        free[k] = saved;
      }
    }
  };
  rec(0, Rational(0));
  return *best;
}

}  // namespace

TEST_CASE("chain exact examples") {
  Instance two = test::independent({{1, 3}, {1, 1}});
  OptResult r = opt_chain_exact(two);
  CHECK(r.order == std::vector<JobId>{0, 1});
  CHECK(r.objective == 5);
  CHECK(r.solver == Solver::ChainExact);

  Instance c = test::chains({{{1, 0}, {1, 10}}, {{1, 1}}});
  OptResult rc = opt_chain_exact(c);
  CHECK(rc.objective == 23);
  CHECK(rc.order == std::vector<JobId>{0, 1, 2});
  CHECK(test::brute_opt(c) == 23);

  Instance single = test::chains({{{2, 1}, {1, 3}, {3, 2}}});
  CHECK(opt_chain_exact(single).objective == 2 * 1 + 3 * 3 + 6 * 2);
  CHECK(opt_chain_exact(single).order == std::vector<JobId>{0, 1, 2});

  CHECK_THROWS_AS(opt_chain_exact(adversarial::gen_intree(2, 2).instance), Error);
}

TEST_CASE("brute force examples") {
  CHECK(opt_brute_force(test::independent({{2, 3}})).objective == 6);
  OptResult r = opt_brute_force(test::independent({{1, 2}, {2, 1}}));
  CHECK(r.objective == 5);
  CHECK(r.order == std::vector<JobId>{0, 1});
  Instance lb = adversarial::gen_average_lb(3).instance;
  CHECK(opt_brute_force(lb).objective <= 22);
  CHECK(opt_brute_force(lb).objective == test::brute_opt(lb));

  InstanceBuilder big;
  for (int i = 0; i < 13; ++i) big.add(1, 1);
  try {
    opt_brute_force(big.build());
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TooLarge);
  }
  InstanceBuilder nine;
  for (int i = 0; i < 9; ++i) nine.add(1, 1);
  CHECK_THROWS_AS(opt_brute_force(nine.build(), 2), Error);
}

TEST_CASE("chain exact agrees with brute force and enumeration") {
  std::mt19937_64 rng(101);
  harness::RandomModel model = test::model(harness::RandomKind::Chains, 12);
  model.p = {0, 6, 2};
  for (int i = 0; i < 400; ++i) {
    Instance inst = harness::random_instance(model, rng);
    OptResult ce = opt_chain_exact(inst);
    OptResult bf = opt_brute_force(inst);
    REQUIRE(ce.objective == bf.objective);
    CHECK(is_linear_extension(inst, ce.order));
    CHECK(is_linear_extension(inst, bf.order));
    CHECK(sequence_objective(inst, ce.order) == ce.objective);
    CHECK(sequence_objective(inst, bf.order) == bf.objective);
    if (inst.size() <= 8) CHECK(bf.objective == test::brute_opt(inst));
  }
}

TEST_CASE("brute force matches enumeration on general DAGs") {
  std::mt19937_64 rng(103);
  for (int i = 0; i < 200; ++i) {
    Instance inst = harness::random_instance(test::model(harness::RandomKind::General, 8), rng);
    OptResult bf = opt_brute_force(inst);
    REQUIRE(bf.objective == test::brute_opt(inst));
    CHECK(is_linear_extension(inst, bf.order));
  }
}

TEST_CASE("relabeling and scaling") {
  std::mt19937_64 rng(107);
  harness::RandomModel model = test::model(harness::RandomKind::General, 10);
  model.shuffle_ids = false;
  for (int i = 0; i < 80; ++i) {
    std::mt19937_64 copy = rng;
    Instance plain = harness::random_instance(model, rng);
    harness::RandomModel shuffled = model;
    shuffled.shuffle_ids = true;
    Instance relabeled = harness::random_instance(shuffled, copy);
    CHECK(opt_brute_force(plain).objective == opt_brute_force(relabeled).objective);

    InstanceBuilder scaled;
    for (const Job& j : plain.jobs()) scaled.add(j.p, Rational(j.w * Q(7, 3)));
    for (const Edge& e : plain.edges()) scaled.edge(e.from, e.to);
    CHECK(opt_brute_force(scaled.build()).objective == Q(7, 3) * opt_brute_force(plain).objective);
  }
}

TEST_CASE("parallel brute force") {
  Instance three = test::independent({{1, 1}, {1, 1}, {1, 1}});
  CHECK(opt_brute_force(three, 2).objective == 4);
  std::mt19937_64 rng(109);
  for (int i = 0; i < 120; ++i) {
    auto kind = i % 2 ? harness::RandomKind::General : harness::RandomKind::Chains;
    Instance inst = harness::random_instance(test::model(kind, 6), rng);
    for (std::size_t m : {std::size_t{2}, std::size_t{3}}) {
      OptResult r = opt_brute_force(inst, m);
      REQUIRE(r.objective == brute_parallel(inst, m));
      CHECK(r.objective <= opt_brute_force(inst, 1).objective);
      PreemptiveBound lb = preemptive_lower_bound(inst, m);
      CHECK(lb.value() <= r.objective);
    }
  }
}

TEST_CASE("weighted max objective") {
  Instance two = test::independent({{1, 1}, {1, 1}});
  CHECK(opt_weighted_max({0, 5}, {1, 1}, two) == 10);
  Instance one = test::independent({{3, 2}});
  CHECK(opt_weighted_max({Q(4)}, {Q(2)}, one) == 12);

  std::mt19937_64 rng(113);
  for (int i = 0; i < 150; ++i) {
    auto kind = i % 2 ? harness::RandomKind::General : harness::RandomKind::Chains;
    Instance inst = harness::random_instance(test::model(kind, 7), rng);
    std::vector<Rational> base = test::weights(inst);
    CHECK(opt_weighted_max(base, base, inst) == opt_brute_force(inst).objective);
    std::vector<Rational> measure;
    std::uniform_int_distribution<int> d(0, 4);
    for (std::size_t j = 0; j < inst.size(); ++j) measure.push_back(d(rng));
    // independent: max of measure over optimal extensions
    Rational opt = test::brute_opt(inst);
    std::optional<Rational> best;
    test::for_each_linear_extension(inst, [&](const std::vector<JobId>& o) {
      if (test::order_cost(inst, o, base) != opt) return;
      Rational v = test::order_cost(inst, o, measure);
      if (!best || v > *best) best = v;
    });
    Rational got = opt_weighted_max(measure, base, inst);
    REQUIRE(got == *best);
    CHECK(got >= sequence_objective(inst, opt_brute_force(inst).order, measure));
  }
}

TEST_CASE("weighted max on long chains uses the chain program") {
  std::mt19937_64 rng(127);
  harness::RandomModel model = test::model(harness::RandomKind::Chains, 12);
  for (int i = 0; i < 60; ++i) {
    Instance inst = harness::random_instance(model, rng);
    std::vector<Rational> base = test::weights(inst);
    std::vector<Rational> measure;
    std::uniform_int_distribution<int> d(0, 3);
    for (std::size_t j = 0; j < inst.size(); ++j) measure.push_back(base[j] == 0 ? 0 : d(rng));
    Rational small = opt_weighted_max(measure, base, inst);
    // appending unit zero-weight jobs as a separate chain pushes n past the
    // bitmask limit; they can only sit among trailing zero-weight jobs, whose
    // measure is zero, so the value is unchanged
    InstanceBuilder b;
    for (const Job& j : inst.jobs()) b.add(j.p, j.w);
    for (const Edge& e : inst.edges()) b.edge(e.from, e.to);
    std::vector<std::pair<Rational, Rational>> tail(6, {Rational(1), Rational(0)});
    b.chain(tail);
    Instance bigger = b.build();
    std::vector<Rational> bm = measure, bb = base;
    for (int k = 0; k < 6; ++k) {
      bm.push_back(0);
      bb.push_back(0);
    }
    if (bigger.size() > kBruteForceMaxJobs) CHECK(opt_weighted_max(bm, bb, bigger) == small);
  }
}

TEST_CASE("chain lengths and the preemptive bound") {
  Instance c = test::chains({{{2, 1}, {3, 1}}, {{1, 4}}});
  CHECK(chain_lengths(c) == std::vector<Rational>{2, 5, 1});
  PreemptiveBound b = preemptive_lower_bound(c, 2);
  CHECK(b.path_bound == 2 + 5 + 4);
  CHECK(b.single_machine_bound == opt_chain_exact(c).objective / 2);
}
