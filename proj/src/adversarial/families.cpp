#include "ncsched/adversarial/families.hpp"

#include <numeric>

#include "ncsched/error.hpp"

namespace ncsched::adversarial {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(Errc::OutOfRange, message);
}

Rational q(std::int64_t v) { return Rational(mpz_class(std::to_string(v))); }

}  // namespace

Json FamilySpec::sidecar() const {
  Json ref = Json::object();
  for (const auto& [k, v] : reference) ref[k] = to_string(v);
  return {{"family", family},
          {"params", params},
          {"nodes", instance.size()},
          {"topology", topology_name(topology.kind)},
          {"tree", topology.tree},
          {"reference", ref}};
}

FamilySpec gen_hidden_chain(std::int64_t n, std::int64_t h) {
  require(n >= 2, "hidden_chain needs n >= 2");
  require(h >= 1 && h <= n - 1, "hidden index must satisfy 1 <= h <= n-1");
  InstanceBuilder b;
  for (std::int64_t i = 0; i + 1 < n; ++i) b.add(1, 0);
  JobId weighted = b.add(1, 1);
  b.edge(static_cast<JobId>(h - 1), weighted);
  FamilySpec f;
  f.family = "hidden_chain";
  f.params = {{"n", n}, {"h", h}};
  f.instance = b.build();
  f.topology = {TopologyKind::Chains, n == 2};
  f.reference["opt"] = 2;
  return f;
}

FamilySpec gen_outtree_static(std::int64_t n, std::int64_t h) {
  require(n >= 2, "outtree_static needs n >= 2");
  require(h >= 1 && h <= n - 1, "hidden index must satisfy 1 <= h <= n-1");
  InstanceBuilder b;
  JobId root = b.add(1, 0);
  for (std::int64_t i = 1; i < n; ++i) b.edge(root, b.add(1, 0));
  JobId weighted = b.add(1, 1);
  b.edge(static_cast<JobId>(h), weighted);
  FamilySpec f;
  f.family = "outtree_static";
  f.params = {{"n", n}, {"h", h}};
  f.instance = b.build();
  f.topology = {n == 2 ? TopologyKind::Chains : TopologyKind::OutForest, true};
  f.reference["opt"] = 3;
  return f;
}

FamilySpec gen_intree(std::int64_t k, std::int64_t l) {
  require(k >= 1 && l >= 1, "intree needs k >= 1 and l >= 1");
  InstanceBuilder b;
  std::vector<JobId> v_leaves, chain_leaves, inner;
  for (std::int64_t i = 0; i < l; ++i) v_leaves.push_back(b.add(1, 0));
  for (std::int64_t i = 0; i < k; ++i) chain_leaves.push_back(b.add(1, 0));
  for (std::int64_t i = 0; i < k; ++i) inner.push_back(b.add(1, 1));
  JobId v = b.add(1, 1);
  JobId r = b.add(1, 0);
  for (JobId leaf : v_leaves) b.edge(leaf, v);
  for (std::int64_t i = 0; i < k; ++i) {
    b.edge(chain_leaves[i], inner[i]);
    b.edge(inner[i], r);
  }
  b.edge(v, r);
  FamilySpec f;
  f.family = "intree";
  f.params = {{"k", k}, {"l", l}};
  f.instance = b.build();
  f.topology = {TopologyKind::InForest, true};
  // chains first (inner nodes at 2, 4, ..., 2k), then v's leaves, then v
  f.reference["opt"] = q(k * (k + 1) + 2 * k + l + 1);
  // every leaf has w(S) = 1, as do v and the inner nodes once revealed
  f.reference["wrr_adaptive_truth"] = q((k + 1) * (2 * k + l + 1));
  return f;
}

FamilySpec gen_average_lb(std::int64_t s) {
  require(s >= 2, "average_lb needs s >= 2");
  std::int64_t n = s * s;
  InstanceBuilder b;
  for (std::int64_t i = 0; i + 1 < s; ++i) b.add(1, 1);
  std::vector<std::pair<Rational, Rational>> chain{{1, 1}, {1, q(n - s)}};
  for (std::int64_t i = 0; i < n - s - 1; ++i) chain.emplace_back(1, 0);
  b.chain(chain);
  FamilySpec f;
  f.family = "average_lb";
  f.params = {{"s", s}, {"n", n}};
  f.instance = b.build();
  f.topology = {TopologyKind::Chains, s == 1};
  Rational opt = q(1 + 2 * (n - s));
  for (std::int64_t i = 1; i <= s - 1; ++i) opt += q(3 + i);
  f.reference["opt_upper"] = opt;
  f.reference["alg_lower"] = q(s * (s + 1) / 2 + (s + 1) * (n - s));
  return f;
}

FamilySpec gen_static_order_lb(std::int64_t omega, std::int64_t d) {
  require(omega >= 2, "static_order_lb needs omega >= 2");
  require(d >= 1, "static_order_lb needs d >= 1");
  std::int64_t lcm = 1;
  for (std::int64_t i = 2; i <= omega; ++i) lcm = std::lcm(lcm, i);
  if (d % lcm != 0) {
    throw Error(Errc::NonIntegralLength,
                "d = " + std::to_string(d) + " is not a multiple of lcm(1.." + std::to_string(omega) + ") = " +
                    std::to_string(lcm));
  }
  Rational h = harmonic(static_cast<std::size_t>(omega));
  Rational dh = q(d) * h;  // integral by the lcm condition
  InstanceBuilder b;
  for (std::int64_t c = 1; c <= omega; ++c) {
    Rational len_q = dh * q(c);
    std::int64_t len = len_q.get_num().get_si();
    std::vector<std::pair<Rational, Rational>> chain;
    for (std::int64_t i = 0; i < len; ++i) {
      bool heavy = c < omega ? i == 0 : i == len - 1;
      chain.emplace_back(1, heavy ? 1 : 0);
    }
    b.chain(chain);
  }
  FamilySpec f;
  f.family = "static_order_lb";
  f.params = {{"omega", omega}, {"d", d}};
  f.instance = b.build();
  f.topology = {TopologyKind::Chains, false};
  f.reference["opt_ref"] = Rational(q(omega * (omega + 1) + omega - 1) + dh * q(omega));
  f.reference["alg_lb"] = Rational(q(d) * h * h * q(omega * omega));
  return f;
}

FamilySpec generate(const std::string& family, const std::map<std::string, std::int64_t>& params) {
  auto get = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end()) throw Error(Errc::OutOfRange, family + " needs parameter '" + key + "'");
    return it->second;
  };
  if (family == "hidden_chain") return gen_hidden_chain(get("n"), get("h"));
  if (family == "outtree_static") return gen_outtree_static(get("n"), get("h"));
  if (family == "intree") return gen_intree(get("k"), get("l"));
  if (family == "average_lb") return gen_average_lb(get("s"));
  if (family == "static_order_lb") return gen_static_order_lb(get("omega"), get("d"));
  throw Error(Errc::UnknownName, "unknown family '" + family + "'");
}

}  // namespace ncsched::adversarial
