#include "ncsched/harness/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <random>
#include <thread>

#include "ncsched/adversarial/families.hpp"
#include "ncsched/core/structure.hpp"
#include "ncsched/engine/rate_monitor.hpp"
#include "ncsched/engine/simulate.hpp"
#include "ncsched/error.hpp"
#include "ncsched/oracles/oracles.hpp"
#include "ncsched/policies/orders.hpp"
#include "ncsched/predictions/errors.hpp"
#include "ncsched/predictions/ground_truth.hpp"
#include "ncsched/predictions/perturb.hpp"

namespace ncsched::harness {

using predictions::Model;
using predictions::NoiseSpec;
using predictions::PredictionBundle;

std::string oracle_choice_name(OracleChoice choice) {
  switch (choice) {
    case OracleChoice::Auto: return "auto";
    case OracleChoice::ChainExact: return "chain_exact";
    case OracleChoice::BruteForce: return "brute_force";
    case OracleChoice::None: return "none";
  }
  return "auto";
}

namespace {

OracleChoice oracle_from_name(const std::string& name) {
  for (OracleChoice c : {OracleChoice::Auto, OracleChoice::ChainExact, OracleChoice::BruteForce, OracleChoice::None}) {
    if (oracle_choice_name(c) == name) return c;
  }
  throw Error(Errc::UnknownName, "unknown oracle '" + name + "'");
}

std::string source_name(InstanceSource::Kind kind) {
  switch (kind) {
    case InstanceSource::Kind::File: return "file";
    case InstanceSource::Kind::Family: return "family";
    case InstanceSource::Kind::Random: return "random";
  }
  return "random";
}

std::uint64_t derive_seed(std::uint64_t seed, std::size_t instance, std::size_t noise, std::size_t slot) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(instance), static_cast<std::uint32_t>(noise),
                    static_cast<std::uint32_t>(slot)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::string family_label(const std::string& family, const std::map<std::string, std::int64_t>& params) {
  std::string s = family + "(";
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) s += ",";
    s += k + "=" + std::to_string(v);
    first = false;
  }
  return s + ")";
}

bool is_true_optimum(const ResultRow& row) {
  return row.machines == 1 && (row.opt_kind == "chain_exact" || row.opt_kind == "brute_force");
}

void fill_oracle(ResultRow& row, const Instance& inst, const ExperimentSpec& spec) {
  std::size_t m = spec.machines;
  OracleChoice choice = spec.oracle;
  if (choice == OracleChoice::None) return;
  if (m == 1) {
    if (choice == OracleChoice::Auto) {
      if (classify_topology(inst).is_chains()) {
        choice = OracleChoice::ChainExact;
      } else if (inst.size() <= oracles::kBruteForceMaxJobs) {
        choice = OracleChoice::BruteForce;
      } else {
        return;
      }
    }
    oracles::OptResult r =
        choice == OracleChoice::ChainExact ? oracles::opt_chain_exact(inst) : oracles::opt_brute_force(inst, 1);
    row.opt = r.objective;
    row.opt_kind = oracles::solver_name(r.solver);
    return;
  }
  try {
    row.lower_bound = oracles::preemptive_lower_bound(inst, m).value();
  } catch (const Error& e) {
    if (e.code() != Errc::TooLarge) throw;
  }
  if (choice == OracleChoice::Auto && inst.size() > oracles::kBruteForceMaxJobsParallel) return;
  row.opt = oracles::opt_brute_force(inst, m).objective;
  row.opt_kind = "brute_force_nonpreemptive";
}

void fill_errors(ResultRow& row, const Instance& inst, const Simulation& sim, Policy& policy,
                 const std::optional<PredictionBundle>& bundle, const Rational& epsilon) {
  if (!bundle) return;
  auto soft = [&](auto&& compute) {
    try {
      predictions::ErrorReport r = compute();
      row.errors[r.measure] = r.value;
    } catch (const Error& e) {
      if (e.code() != Errc::TooLarge && e.code() != Errc::TopologyMismatch) throw;
    }
  };
  switch (bundle->model) {
    case Model::AdaptiveWeights:
      soft([&] { return predictions::distortion_error(inst, bundle->weights()); });
      break;
    case Model::ActionsStatic:
    case Model::ActionsAdaptive:
      soft([&] { return predictions::eta_inversions(inst, bundle->ranking()); });
      break;
    case Model::Input:
      soft([&] { return predictions::lambda_error(bundle->chains(), inst); });
      break;
    case Model::AdaptiveOrder:
      if (auto* oa = dynamic_cast<policies::OrderAdaptive*>(&policy)) {
        soft([&] { return predictions::l_eps_error(sim.trace, oa->history(), inst, epsilon); });
      }
      break;
    default:
      break;
  }
}

ResultRow run_cell(const ExperimentSpec& spec, const std::pair<std::string, Instance>& item, std::size_t ii,
                   std::size_t ni, std::uint64_t seed) {
  ResultRow row;
  row.experiment = spec.name;
  row.instance_index = ii;
  row.instance_label = item.first;
  row.noise_index = ni;
  row.noise = predictions::noise_to_json(spec.noise_levels[ni]).dump();
  row.seed = seed;
  row.policy = policy_config_to_json(spec.policy).dump();
  row.machines = spec.machines;
  const Instance& inst = item.second;
  row.n = inst.size();
  auto start = std::chrono::steady_clock::now();
  try {
    row.topology = topology_name(classify_topology(inst).kind);
    row.width = inst.empty() ? 0 : width(inst);
    std::optional<Model> model = spec.model ? spec.model : policy_model(spec.policy);
    if (model) row.model = predictions::model_name(*model);
    const NoiseSpec& noise = spec.noise_levels[ni];
    std::optional<PredictionBundle> leaf_bundle;
    BundleProvider provider = [&](Model m, std::size_t slot) {
      PredictionBundle b = predictions::ground_truth(inst, m);
      if (!noise.empty()) b = predictions::perturb(b, noise, derive_seed(seed, ii, ni, slot));
      if (slot == 0) leaf_bundle = b;
      return b;
    };
    PolicyPtr policy = make_policy(spec.policy, provider, spec.machines);
    Simulation sim = simulate(inst, *policy, spec.machines);
    row.alg = sim.result.objective;
    fill_oracle(row, inst, spec);
    if (row.opt && *row.opt != 0) row.ratio = Rational(*row.alg / *row.opt);
    try {
      row.rho = min_rho_witness(sim.trace, inst);
    } catch (const Error&) {
    }
    fill_errors(row, inst, sim, *policy, leaf_bundle, spec.epsilon);
  } catch (const Error& e) {
    row.status = "error";
    row.message = std::string(errc_name(e.code())) + ": " + e.what();
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

ExperimentSpec spec_from_json(const Json& doc) {
  if (!doc.is_object()) throw Error(Errc::Parse, "experiment spec must be an object");
  ExperimentSpec s;
  try {
    s.name = doc.value("name", s.name);
    if (!doc.contains("instances")) throw Error(Errc::InvalidSpec, "spec needs 'instances'");
    const Json& in = doc.at("instances");
    std::string source = in.value("source", std::string("random"));
    if (source == "random") {
      s.instances.kind = InstanceSource::Kind::Random;
      s.instances.model = random_model_from_json(in.value("model", Json::object()));
      s.instances.count = in.value("count", std::size_t{1});
      if (in.contains("seed")) s.instances.seed = in.at("seed").get<std::uint64_t>();
    } else if (source == "family") {
      s.instances.kind = InstanceSource::Kind::Family;
      s.instances.family = in.at("family").get<std::string>();
      s.instances.params = in.value("params", std::map<std::string, std::int64_t>{});
    } else if (source == "file") {
      s.instances.kind = InstanceSource::Kind::File;
      s.instances.path = in.at("path").get<std::string>();
    } else {
      throw Error(Errc::UnknownName, "unknown instance source '" + source + "'");
    }
    if (!doc.contains("policy")) throw Error(Errc::InvalidSpec, "spec needs 'policy'");
    s.policy = policy_config_from_json(doc.at("policy"));
    if (doc.contains("predictions")) {
      const Json& p = doc.at("predictions");
      if (p.contains("model")) s.model = predictions::model_from_name(p.at("model").get<std::string>());
      if (p.contains("noise")) {
        const Json& n = p.at("noise");
        s.noise_levels.clear();
        if (n.is_array()) {
          for (const Json& level : n) s.noise_levels.push_back(predictions::noise_from_json(level));
        } else {
          s.noise_levels.push_back(predictions::noise_from_json(n));
        }
      }
      if (p.contains("epsilon")) s.epsilon = rational_from_json(p.at("epsilon"));
    }
    s.machines = doc.value("machines", s.machines);
    s.seeds = doc.value("seeds", std::vector<std::uint64_t>{});
    if (doc.contains("oracle")) s.oracle = oracle_from_name(doc.at("oracle").get<std::string>());
  } catch (const Json::exception& e) {
    throw Error(Errc::Parse, std::string("experiment spec: ") + e.what());
  }
  check_spec(s);
  return s;
}

Json spec_to_json(const ExperimentSpec& s) {
  Json in;
  in["source"] = source_name(s.instances.kind);
  switch (s.instances.kind) {
    case InstanceSource::Kind::Random:
      in["model"] = random_model_to_json(s.instances.model);
      in["count"] = s.instances.count;
      if (s.instances.seed) in["seed"] = *s.instances.seed;
      break;
    case InstanceSource::Kind::Family:
      in["family"] = s.instances.family;
      in["params"] = s.instances.params;
      break;
    case InstanceSource::Kind::File:
      in["path"] = s.instances.path;
      break;
  }
  Json noise = Json::array();
  for (const NoiseSpec& n : s.noise_levels) noise.push_back(predictions::noise_to_json(n));
  Json pred = {{"noise", noise}, {"epsilon", to_string(s.epsilon)}};
  if (s.model) pred["model"] = predictions::model_name(*s.model);
  return {{"name", s.name},         {"instances", in}, {"policy", policy_config_to_json(s.policy)},
          {"predictions", pred},    {"machines", s.machines}, {"seeds", s.seeds},
          {"oracle", oracle_choice_name(s.oracle)}};
}

void check_spec(const ExperimentSpec& s) {
  check_policy(s.policy);
  if (s.seeds.empty()) throw Error(Errc::InvalidSpec, "seeds must be non-empty");
  if (s.machines == 0) throw Error(Errc::InvalidSpec, "machines must be at least 1");
  if (s.noise_levels.empty()) throw Error(Errc::InvalidSpec, "noise levels must be non-empty");
  if (s.epsilon <= 0) throw Error(Errc::InvalidSpec, "epsilon must be positive");
  std::optional<Model> own = policy_model(s.policy);
  if (s.model && s.model != own) {
    throw Error(Errc::InvalidSpec, "prediction model '" + predictions::model_name(*s.model) +
                                       "' does not match what the policy consumes");
  }
  if (s.oracle == OracleChoice::ChainExact && s.machines != 1) {
    throw Error(Errc::InvalidSpec, "chain_exact oracle is single-machine only");
  }
  if (s.instances.kind == InstanceSource::Kind::Family) {
    static const std::vector<std::string> families = {"hidden_chain", "outtree_static", "intree", "average_lb",
                                                      "static_order_lb"};
    if (std::find(families.begin(), families.end(), s.instances.family) == families.end()) {
      throw Error(Errc::UnknownName, "unknown family '" + s.instances.family + "'");
    }
  }
}

std::size_t default_workers() {
  if (const char* env = std::getenv("NCSCHED_WORKERS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::vector<std::pair<std::string, Instance>> materialize_instances(const ExperimentSpec& spec,
                                                                   std::uint64_t master_seed) {
  std::vector<std::pair<std::string, Instance>> out;
  const InstanceSource& src = spec.instances;
  switch (src.kind) {
    case InstanceSource::Kind::File:
      out.emplace_back(src.path, instance_from_json(read_json_file(src.path)));
      break;
    case InstanceSource::Kind::Family:
      out.emplace_back(family_label(src.family, src.params), adversarial::generate(src.family, src.params).instance);
      break;
    case InstanceSource::Kind::Random: {
      std::mt19937_64 rng(src.seed.value_or(master_seed));
      std::string kind = random_kind_name(src.model.kind);
      for (std::size_t i = 0; i < src.count; ++i) {
        out.emplace_back("random:" + kind + "#" + std::to_string(i), random_instance(src.model, rng));
      }
      break;
    }
  }
  return out;
}

std::vector<ResultRow> run(const ExperimentSpec& spec, const RunOptions& options) {
  check_spec(spec);
  std::vector<std::pair<std::string, Instance>> instances = materialize_instances(spec, options.master_seed);
  struct Cell {
    std::size_t instance, noise, seed;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (std::size_t k = 0; k < spec.noise_levels.size(); ++k) {
      for (std::size_t s = 0; s < spec.seeds.size(); ++s) cells.push_back({i, k, s});
    }
  }
  std::vector<ResultRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c; (c = next.fetch_add(1)) < cells.size();) {
      const Cell& cell = cells[c];
      rows[c] = run_cell(spec, instances[cell.instance], cell.instance, cell.noise, spec.seeds[cell.seed]);
    }
  };
  std::size_t workers = options.workers == 0 ? default_workers() : options.workers;
  workers = std::max<std::size_t>(1, std::min(workers, cells.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  for (const ResultRow& row : rows) {
    if (row.ratio && is_true_optimum(row) && *row.ratio < 1) {
      throw Error(Errc::OracleFailure, "ratio " + to_string(*row.ratio) + " < 1 against a true optimum on " +
                                           row.instance_label);
    }
  }
  return rows;
}

}  // namespace ncsched::harness
