#include <doctest.h>

#include "ncsched/adversarial/families.hpp"
#include "ncsched/core/json_io.hpp"
#include "ncsched/core/structure.hpp"
#include "ncsched/error.hpp"
#include "support.hpp"

using namespace ncsched;
using test::Q;

namespace {

bool has_defect(const Validation& v, DefectKind kind) {
  return std::any_of(v.defects.begin(), v.defects.end(), [&](const Defect& d) { return d.kind == kind; });
}

}  // namespace

TEST_CASE("rational helpers") {
  CHECK(to_string(Q(3)) == "3/1");
  CHECK(to_string(Q(-6, 4)) == "-3/2");
  CHECK(parse_rational("10/4") == Q(5, 2));
  CHECK(parse_rational("7") == Q(7));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK(to_decimal(Q(6, 5), 3) == "1.200");
  CHECK(to_decimal(Q(2, 3), 2) == "0.67");
  CHECK(harmonic(3) == Q(11, 6));
  CHECK(harmonic(1) == 1);
  CHECK(to_string(ExtendedRational::infinity()) == "inf");
  CHECK(parse_extended("inf").is_infinite());
  CHECK(ExtendedRational(Q(5)) < ExtendedRational::infinity());
}

TEST_CASE("validate accepts a chain and reports defects") {
  std::vector<RawJob> jobs{{0, 1, 1}, {1, 1, 1}, {2, 1, 1}};
  Validation ok = validate(jobs, {{0, 1}, {1, 2}});
  REQUIRE(ok.ok());
  CHECK(ok.instance->size() == 3);

  Validation cyc = validate({{0, 1, 1}, {1, 1, 1}}, {{0, 1}, {1, 0}});
  REQUIRE(has_defect(cyc, DefectKind::Cyclic));
  auto d = *std::find_if(cyc.defects.begin(), cyc.defects.end(),
                         [](const Defect& x) { return x.kind == DefectKind::Cyclic; });
  CHECK(d.ids == std::vector<std::int64_t>{0, 1});
  CHECK_FALSE(cyc.instance.has_value());

  CHECK(has_defect(validate({{0, 1, -1}}, {}), DefectKind::NegativeValue));
  CHECK(has_defect(validate({{0, -1, 1}}, {}), DefectKind::NegativeValue));
  CHECK(has_defect(validate({{0, 1, 1}}, {{0, 5}}), DefectKind::DanglingEdge));
  CHECK(has_defect(validate({{0, 1, 1}, {0, 1, 1}}, {}), DefectKind::DuplicateId));
  CHECK(has_defect(validate({{0, 1, 1}, {1, 1, 1}}, {{0, 1}, {0, 1}}), DefectKind::DuplicateEdge));
  CHECK(has_defect(validate({{0, 1, 1}}, {{0, 0}}), DefectKind::Cyclic));

  // several defects at once are all reported
  Validation many = validate({{0, 1, -1}, {1, 1, 1}}, {{0, 1}, {1, 0}, {0, 9}});
  CHECK(has_defect(many, DefectKind::NegativeValue));
  CHECK(has_defect(many, DefectKind::Cyclic));
  CHECK(has_defect(many, DefectKind::DanglingEdge));

  CHECK_THROWS_AS(make_instance({{0, 1, 1}}, {{0, 0}}), Error);
}

TEST_CASE("classify_topology") {
  Instance three = test::chains({{{1, 1}, {1, 1}}, {{1, 1}, {1, 1}}, {{1, 1}, {1, 1}}});
  Topology t = classify_topology(three);
  CHECK(t.kind == TopologyKind::Chains);
  CHECK_FALSE(t.tree);
  CHECK(t.is_out_forest());
  CHECK(t.is_in_forest());

  Topology it = classify_topology(adversarial::gen_intree(4, 7).instance);
  CHECK(it.kind == TopologyKind::InForest);
  CHECK(it.tree);

  InstanceBuilder b;
  for (int i = 0; i < 4; ++i) b.add(1, 1);
  b.edge(0, 1).edge(0, 2).edge(1, 3).edge(2, 3);
  CHECK(classify_topology(b.build()).kind == TopologyKind::GeneralDag);

  InstanceBuilder o;
  for (int i = 0; i < 3; ++i) o.add(1, 1);
  o.edge(0, 1).edge(0, 2);
  CHECK(classify_topology(o.build()).kind == TopologyKind::OutForest);
}

TEST_CASE("width") {
  CHECK(width(test::chains({{{1, 1}}, {{1, 1}, {2, 2}}, {{1, 0}}})) == 3);
  CHECK(width(test::chains({{{1, 1}, {1, 1}, {1, 1}, {1, 1}}})) == 1);
  Instance intree = adversarial::gen_intree(4, 7).instance;
  CHECK(intree.size() == 17);
  CHECK(test::brute_width(intree) == 11);
  CHECK(width(intree) == 11);
  CHECK_THROWS_AS(width(Instance{}), Error);
  try {
    width(Instance{});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptyInstance);
  }
}

TEST_CASE("width matches brute-force antichains on random DAGs") {
  std::mt19937_64 rng(7);
  for (auto kind : {harness::RandomKind::General, harness::RandomKind::OutForest, harness::RandomKind::InForest,
                    harness::RandomKind::Chains}) {
    for (int i = 0; i < 120; ++i) {
      Instance inst = harness::random_instance(test::model(kind, 12), rng);
      REQUIRE(width(inst) == test::brute_width(inst));
      if (classify_topology(inst).is_chains()) CHECK(width(inst) == component_count(inst));
    }
  }
}

TEST_CASE("successor_aggregate") {
  Instance c = test::chains({{{1, 1}, {1, 2}, {1, 3}}});
  SuccessorAggregate s = successor_aggregate(c, 1);
  CHECK(s.members == std::vector<JobId>{1, 2});
  CHECK(s.weight == 5);
  CHECK(s.processing == 2);

  InstanceBuilder b;
  JobId root = b.add(1, 1);
  for (int i = 0; i < 3; ++i) b.edge(root, b.add(1, 1));
  Instance tree = b.build();
  CHECK(successor_aggregate(tree, root).members.size() == 4);

  Instance two = test::chains({{{1, 1}, {1, 3}}});
  CHECK(*successor_aggregate(two, 0).average == 2);

  Instance zero = test::chains({{{0, 1}}});
  CHECK_FALSE(successor_aggregate(zero, 0).average.has_value());
  CHECK_THROWS_AS(successor_aggregate(two, 9), Error);
}

TEST_CASE("successor sets shrink along edges and split in out-forests") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 150; ++i) {
    auto kind = i % 2 ? harness::RandomKind::General : harness::RandomKind::OutForest;
    Instance inst = harness::random_instance(test::model(kind, 12), rng);
    auto reach = test::closure(inst);
    std::vector<Rational> ws = successor_weights(inst);
    for (JobId v = 0; v < inst.size(); ++v) {
      SuccessorAggregate a = successor_aggregate(inst, v);
      Rational w = inst.w(v);
      for (JobId u = 0; u < inst.size(); ++u) {
        if (reach[v][u]) w += inst.w(u);
      }
      REQUIRE(a.weight == w);
      REQUIRE(ws[v] == w);
    }
    for (const Edge& e : inst.edges()) {
      SuccessorAggregate sv = successor_aggregate(inst, e.from);
      SuccessorAggregate su = successor_aggregate(inst, e.to);
      CHECK(std::includes(sv.members.begin(), sv.members.end(), su.members.begin(), su.members.end()));
      CHECK(su.members.size() < sv.members.size());
      CHECK(su.weight <= sv.weight);
    }
    if (kind == harness::RandomKind::OutForest) {
      for (JobId v = 0; v < inst.size(); ++v) {
        const auto& succ = inst.successors(v);
        for (std::size_t a = 0; a < succ.size(); ++a) {
          for (std::size_t b = a + 1; b < succ.size(); ++b) {
            auto x = successor_aggregate(inst, succ[a]).members;
            auto y = successor_aggregate(inst, succ[b]).members;
            std::vector<JobId> both;
            std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(both));
            CHECK(both.empty());
          }
        }
      }
    }
  }
}

TEST_CASE("instance JSON round trip") {
  InstanceBuilder b;
  b.add(Q(3, 2), 0);
  b.add(0, Q(7, 3));
  b.edge(0, 1);
  Instance inst = b.build();
  Json doc = instance_to_json(inst);
  CHECK(doc["version"] == 1);
  CHECK(doc["jobs"][0]["p"] == "3/2");
  Instance back = instance_from_json(doc);
  CHECK(instance_to_json(back) == doc);

  Json shorthand = Json::parse(R"({"version":1,"jobs":[{"id":0,"p":2,"w":"1/2"},{"id":1,"p":1,"w":1}],"edges":[[0,1]]})");
  Instance s = instance_from_json(shorthand);
  CHECK(s.p(0) == 2);
  CHECK(s.w(0) == Q(1, 2));
  CHECK(s.successors(0) == std::vector<JobId>{1});

  Json cyclic = Json::parse(R"({"version":1,"jobs":[{"id":0,"p":1,"w":1},{"id":1,"p":1,"w":1}],"edges":[[0,1],[1,0]]})");
  CHECK_THROWS_AS(instance_from_json(cyclic), Error);
  CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"jobs":"nope"})")), Error);
}

TEST_CASE("chains_of and topological order") {
  Instance c = test::chains({{{1, 1}, {1, 1}}, {{1, 1}}});
  auto cs = chains_of(c);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0] == std::vector<JobId>{0, 1});
  CHECK(cs[1] == std::vector<JobId>{2});
  CHECK_THROWS_AS(chains_of(adversarial::gen_intree(2, 2).instance), Error);
  Instance tree = adversarial::gen_intree(2, 2).instance;
  auto topo = topological_order(tree);
  std::vector<std::size_t> pos(topo.size());
  for (std::size_t i = 0; i < topo.size(); ++i) pos[topo[i]] = i;
  for (const Edge& e : tree.edges()) CHECK(pos[e.from] < pos[e.to]);
}
