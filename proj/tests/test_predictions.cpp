#include <doctest.h>

#include "ncsched/adversarial/families.hpp"
#include "ncsched/core/structure.hpp"
#include "ncsched/engine/simulate.hpp"
#include "ncsched/error.hpp"
#include "ncsched/oracles/oracles.hpp"
#include "ncsched/policies/follow.hpp"
#include "ncsched/policies/orders.hpp"
#include "ncsched/policies/weights.hpp"
#include "ncsched/predictions/errors.hpp"
#include "ncsched/predictions/ground_truth.hpp"
#include "ncsched/predictions/perturb.hpp"
#include "ncsched/predictions/subinstances.hpp"
#include "support.hpp"

using namespace ncsched;
using namespace ncsched::predictions;
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

NoiseSpec beta(const Rational& b) {
  NoiseSpec n;
  n.beta = b;
  return n;
}

NoiseSpec swaps(std::size_t k) {
  NoiseSpec n;
  n.swaps = k;
  return n;
}

// weights chain by chain, chains in head order
std::vector<std::vector<Rational>> weights_by_chain(const Instance& inst) {
  std::vector<std::vector<Rational>> out;
  for (const auto& c : chains_of(inst)) {
    out.emplace_back();
    for (JobId j : c) out.back().push_back(inst.w(j));
  }
  return out;
}

}  // namespace

TEST_CASE("ground truth") {
  Instance c = test::chains({{{1, 1}, {1, 2}}});
  PredictionBundle s = ground_truth(c, Model::StaticWeights);
  CHECK(s.weights().size() == 1);
  CHECK(s.weights().at(0) == 3);
  PredictionBundle a = ground_truth(c, Model::AdaptiveWeights);
  CHECK(a.weights().at(1) == 2);

  Instance tie = test::chains({{{1, 5}}, {{1, 2}, {1, 3}}});
  CHECK(ground_truth(tie, Model::StaticOrder).ranking() == Ranking{0, 1});
  CHECK(ground_truth(tie, Model::AdaptiveOrder).ranking() == Ranking{0, 1, 2});

  Instance lb = adversarial::gen_average_lb(3).instance;
  PredictionBundle avg = ground_truth(lb, Model::Averages);
  for (const auto& [v, x] : avg.weights()) {
    // every chain suffix that can become a front job averages to 1 at its head
    if (lb.predecessors(v).empty()) CHECK(x == 1);
  }
  CHECK(avg.weights().size() == lb.size());
  CHECK(code_of([] { ground_truth(test::chains({{{0, 1}}}), Model::Averages); }) == Errc::UndefinedAverage);

  PredictionBundle act = ground_truth(c, Model::ActionsStatic);
  CHECK(act.ranking() == Ranking{0, 1});
  PredictionBundle in = ground_truth(c, Model::Input);
  REQUIRE(in.chains().size() == 1);
  CHECK(in.chains()[0].head == 0);
  CHECK(code_of([] { ground_truth(adversarial::gen_intree(2, 2).instance, Model::Input); }) == Errc::TopologyMismatch);
}

TEST_CASE("perturbation") {
  std::mt19937_64 rng(1);
  Instance inst = harness::random_instance(test::model(harness::RandomKind::OutForest, 10), rng);
  PredictionBundle truth = ground_truth(inst, Model::AdaptiveWeights);
  PredictionBundle zero = perturb(truth, beta(0), 9);
  CHECK(zero.weights() == truth.weights());
  CHECK(zero.provenance.perturbed);
  CHECK(zero.provenance.seed == 9);

  PredictionBundle n1 = perturb(truth, beta(Q(1, 2)), 5);
  PredictionBundle n2 = perturb(truth, beta(Q(1, 2)), 5);
  CHECK(bundle_to_json(n1) == bundle_to_json(n2));
  for (const auto& [v, x] : n1.weights()) {
    CHECK(x >= 0);
    if (truth.weights().at(v) == 0) CHECK(x == 0);
  }

  PredictionBundle order = ground_truth(inst, Model::AdaptiveOrder);
  CHECK(perturb(order, swaps(0), 3).ranking() == order.ranking());
  Ranking shuffled = perturb(order, swaps(4), 3).ranking();
  CHECK(std::is_permutation(shuffled.begin(), shuffled.end(), order.ranking().begin(), order.ranking().end()));
  CHECK(perturb(order, swaps(4), 3).ranking() == shuffled);

  CHECK(code_of([&] { perturb(truth, swaps(2), 1); }) == Errc::IncompatibleNoise);
  CHECK(code_of([&] { perturb(order, beta(1), 1); }) == Errc::IncompatibleNoise);

  Instance c = test::chains({{{1, 1}, {1, 1}, {1, 1}}, {{1, 2}}});
  PredictionBundle input = ground_truth(c, Model::Input);
  NoiseSpec len;
  len.length_delta = 2;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PredictionBundle p = perturb(input, len, seed);
    REQUIRE(p.chains().size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      std::size_t orig = input.chains()[i].jobs.size();
      std::size_t now = p.chains()[i].jobs.size();
      CHECK(now >= 1);
      CHECK(now + 2 >= orig);
      CHECK(now <= orig + 2);
      for (std::size_t k = orig; k < now; ++k) CHECK(p.chains()[i].jobs[k] == std::make_pair(Q(1), Q(0)));
    }
  }
}

TEST_CASE("bundle JSON round trip") {
  Instance inst = test::chains({{{1, 1}, {2, 3}}, {{1, 2}}});
  for (Model m : {Model::StaticWeights, Model::AdaptiveWeights, Model::StaticOrder, Model::AdaptiveOrder,
                  Model::Averages, Model::ActionsStatic, Model::ActionsAdaptive, Model::Input}) {
    PredictionBundle b = ground_truth(inst, m);
    if (m == Model::AdaptiveWeights) b = perturb(b, beta(Q(1, 3)), 4);
    Json doc = bundle_to_json(b);
    PredictionBundle back = bundle_from_json(doc);
    CHECK(back.model == m);
    CHECK(bundle_to_json(back) == doc);
    CHECK(model_from_name(model_name(m)) == m);
  }
  CHECK(code_of([] { model_from_name("telepathy"); }) == Errc::UnknownName);
  CHECK(code_of([] { bundle_from_json(Json::parse(R"({"model":"static_weights"})")); }) == Errc::Parse);
}

TEST_CASE("eta inversions") {
  Instance inst = test::independent({{1, 1}, {1, 2}});
  CHECK(eta_inversions(inst, {1, 0}).value == ExtendedRational(Q(0)));
  CHECK(eta_inversions(inst, {0, 1}).value == ExtendedRational(Q(1)));
  Instance same = test::independent({{2, 3}, {2, 3}});
  auto sigma = oracles::optimal_order(same).order;
  CHECK(eta_inversions(same, {sigma[1], sigma[0]}).value == ExtendedRational(Q(0)));
  CHECK(eta_inversions(same, sigma).value == ExtendedRational(Q(0)));
}

TEST_CASE("lambda error") {
  Instance c = test::chains({{{1, 1}, {1, 2}}, {{1, 3}}});
  ErrorReport same = lambda_error(ground_truth(c, Model::Input).chains(), c);
  CHECK(same.value == ExtendedRational(Q(0)));

  Instance one = test::chains({{{1, 2}}});
  ErrorReport r = lambda_error({{0, {{1, 1}}}}, one);
  CHECK(r.components.at("gamma_u") == ExtendedRational(Q(1)));
  CHECK(r.components.at("gamma_a") == ExtendedRational(Q(0)));
  CHECK(r.value == ExtendedRational(Q(1)));

  // the actual chain is padded with a zero-weight job; the predicted weight on
  // that slot is absent in reality and completes at time 2
  Instance shorter = test::chains({{{1, 1}}});
  ErrorReport pad = lambda_error({{0, {{1, 1}, {1, 1}}}}, shorter);
  CHECK(pad.components.at("gamma_u") == ExtendedRational(Q(0)));
  CHECK(pad.components.at("gamma_a") == ExtendedRational(Q(2)));
  // the actual chain runs past the prediction; the extra job has weight 0 there
  ErrorReport extra = lambda_error({{0, {{1, 1}}}}, test::chains({{{1, 1}, {1, 0}}}));
  CHECK(extra.value == ExtendedRational(Q(0)));

  CHECK(code_of([] { lambda_error({}, test::chains({{{2, 1}}})); }) == Errc::TopologyMismatch);

  // linear under scaling of both sides
  std::mt19937_64 rng(3);
  for (int i = 0; i < 40; ++i) {
    Instance a = harness::random_instance(test::model(harness::RandomKind::Chains, 8, true), rng);
    NoiseSpec noise;
    noise.beta = Q(1, 2);
    noise.length_delta = 1;
    policies::PredictedChains pred = perturb(ground_truth(a, Model::Input), noise, i).chains();
    ErrorReport base = lambda_error(pred, a);
    InstanceBuilder b;
    for (const Job& j : a.jobs()) b.add(j.p, Rational(j.w * 3));
    for (const Edge& e : a.edges()) b.edge(e.from, e.to);
    for (auto& pc : pred) {
      for (auto& [p, w] : pc.jobs) w *= 3;
    }
    CHECK(lambda_error(pred, b.build()).value == ExtendedRational(Rational(base.value.value() * 3)));
  }
}

TEST_CASE("distortion") {
  std::mt19937_64 rng(5);
  harness::RandomModel model = test::model(harness::RandomKind::OutForest, 10);
  model.w = {1, 4, 1};
  Instance inst = harness::random_instance(model, rng);
  WeightTable truth = ground_truth(inst, Model::AdaptiveWeights).weights();
  CHECK(distortion_error(inst, truth).value == ExtendedRational(Q(1)));
  WeightTable doubled = truth;
  for (auto& [v, x] : doubled) x *= 2;
  CHECK(distortion_error(inst, doubled).value == ExtendedRational(Q(1)));

  Instance two = test::independent({{1, 1}, {1, 1}});
  CHECK(distortion_error(two, {{0, 2}, {1, Q(1, 3)}}).value == ExtendedRational(Q(6)));
  CHECK(distortion_error(two, {{0, 0}, {1, 1}}).value.is_infinite());
  CHECK(distortion_error(two, {{0, 1}}).value.is_infinite());

  // uniform scaling leaves wrr_adaptive untouched
  for (int i = 0; i < 40; ++i) {
    Instance f = harness::random_instance(test::model(harness::RandomKind::OutForest, 10), rng);
    WeightTable t = perturb(ground_truth(f, Model::AdaptiveWeights), beta(1), i).weights();
    WeightTable scaled = t;
    for (auto& [v, x] : scaled) x *= Q(7, 2);
    auto p1 = policies::wrr_adaptive(t);
    auto p2 = policies::wrr_adaptive(scaled);
    CHECK(trace_to_jsonl(simulate(f, *p1).trace) == trace_to_jsonl(simulate(f, *p2).trace));
    CHECK(distortion_error(f, t).value == distortion_error(f, scaled).value);
  }
}

TEST_CASE("l_eps error") {
  Instance single = test::independent({{1, 3}});
  policies::OrderAdaptive p1({0});
  Simulation s1 = simulate(single, p1);
  ErrorReport r1 = l_eps_error(s1.trace, p1.history(), single, Q(1, 10));
  CHECK(r1.value == ExtendedRational(Q(11, 10)));
  CHECK(r1.components.at("raw_l") == ExtendedRational(Q(0)));

  Instance three = test::independent({{1, 1}, {1, 1}, {1, 4}});
  policies::OrderAdaptive p3({0, 1, 2});
  Simulation s3 = simulate(three, p3);
  ErrorReport r3 = l_eps_error(s3.trace, p3.history(), three, Q(1, 10));
  CHECK(r3.components.at("raw_l") == ExtendedRational(Q(2)));
  CHECK(r3.value == ExtendedRational(Q(2)));

  Instance close = test::independent({{1, 20}, {1, 21}});
  policies::OrderAdaptive pc({1, 0});
  Simulation sc = simulate(close, pc);
  CHECK(l_eps_error(sc.trace, pc.history(), close, Q(1, 10)).value == ExtendedRational(Q(11, 10)));

  CHECK(code_of([&] { l_eps_error(s3.trace, {}, three, Q(1, 10)); }) == Errc::HistoryMismatch);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    Instance f = harness::random_instance(test::model(harness::RandomKind::OutForest, 10), rng);
    Ranking noisy = perturb(ground_truth(f, Model::AdaptiveOrder), swaps(5), i).ranking();
    policies::OrderAdaptive p(noisy);
    Simulation s = simulate(f, p);
    ExtendedRational prev = ExtendedRational::infinity();
    for (Rational eps : {Q(1, 100), Q(1, 10), Q(1, 2), Q(1), Q(3)}) {
      ExtendedRational raw = l_eps_error(s.trace, p.history(), f, eps).components.at("raw_l");
      CHECK(raw <= prev);
      prev = raw;
    }
  }
}

TEST_CASE("weight subinstances") {
  Instance c = test::chains({{{1, 1}, {1, 2}}});
  WeightSubinstances exact = build_weight_subinstances(c, {{0, 3}});
  CHECK(weights_by_chain(exact.predicted) == weights_by_chain(c));
  CHECK(exact.under.empty());
  CHECK(exact.over.empty());
  CHECK(weights_by_chain(exact.pruned) == weights_by_chain(c));

  WeightSubinstances under = build_weight_subinstances(c, {{0, 2}});
  CHECK(weights_by_chain(under.predicted) == std::vector<std::vector<Rational>>{{1, 1}});
  REQUIRE(under.under.size() == 1);
  CHECK(under.under.w(0) == 1);
  CHECK(under.under.p(0) == 2);

  WeightSubinstances over = build_weight_subinstances(c, {{0, 5}});
  CHECK(weights_by_chain(over.predicted) == std::vector<std::vector<Rational>>{{1, 4}});
  REQUIRE(over.over.size() == 1);
  CHECK(over.over.w(0) == 2);
  CHECK(over.over.p(0) == 2);
  CHECK(weights_by_chain(over.pruned) == std::vector<std::vector<Rational>>{{1, 2}});

  std::mt19937_64 rng(11);
  for (int i = 0; i < 80; ++i) {
    Instance inst = harness::random_instance(test::model(harness::RandomKind::Chains, 10), rng);
    WeightTable noisy = perturb(ground_truth(inst, Model::StaticWeights), beta(1), i).weights();
    WeightSubinstances sub = build_weight_subinstances(inst, noisy);
    auto heads = chains_of(inst);
    auto pc = chains_of(sub.predicted);
    REQUIRE(pc.size() == heads.size());
    for (std::size_t k = 0; k < pc.size(); ++k) {
      Rational total(0);
      for (JobId j : pc[k]) total += sub.predicted.w(j);
      CHECK(total == noisy.at(heads[k].front()));
    }
    CHECK(oracles::opt_chain_exact(sub.pruned).objective <= oracles::opt_chain_exact(inst).objective);
  }
}
