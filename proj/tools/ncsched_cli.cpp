// ncsched command line: gen, opt, simulate, predict, eval, run, report.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "ncsched/adversarial/families.hpp"
#include "ncsched/core/json_io.hpp"
#include "ncsched/core/structure.hpp"
#include "ncsched/engine/rate_monitor.hpp"
#include "ncsched/engine/simulate.hpp"
#include "ncsched/error.hpp"
#include "ncsched/harness/experiment.hpp"
#include "ncsched/harness/random_instances.hpp"
#include "ncsched/harness/registry.hpp"
#include "ncsched/harness/report.hpp"
#include "ncsched/oracles/oracles.hpp"
#include "ncsched/policies/orders.hpp"
#include "ncsched/predictions/errors.hpp"
#include "ncsched/predictions/ground_truth.hpp"
#include "ncsched/predictions/perturb.hpp"

using namespace ncsched;

namespace {

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

Json error_json(std::string_view code, const std::string& message) {
  return {{"error", {{"code", std::string(code)}, {"message", message}}}};
}

std::map<std::string, std::int64_t> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, std::int64_t> out;
  for (const std::string& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(Errc::Parse, "parameter '" + item + "' is not key=value");
    std::string value = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      out[item.substr(0, eq)] = std::stoll(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::logic_error&) {
      throw Error(Errc::Parse, "parameter '" + item + "' needs an integer value");
    }
  }
  return out;
}

Json parse_json_arg(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(Errc::Parse, std::string("bad JSON argument: ") + e.what());
  }
}

harness::PolicyConfig policy_arg(const std::string& text) {
  if (!text.empty() && text.front() == '{') return harness::policy_config_from_json(parse_json_arg(text));
  harness::PolicyConfig c;
  c.name = text;
  return c;
}

// Truth predictions, perturbed when a noise level is given.
predictions::PredictionBundle make_bundle(const Instance& inst, predictions::Model model, const std::string& noise,
                                          std::uint64_t seed) {
  predictions::PredictionBundle b = predictions::ground_truth(inst, model);
  if (!noise.empty()) b = predictions::perturb(b, predictions::noise_from_json(parse_json_arg(noise)), seed);
  return b;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic non-clairvoyant scheduling simulator"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Master seed")->capture_default_str();

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance (adversarial family or random model)");
  std::string family, random_kind, gen_out, sidecar_out;
  std::vector<std::string> gen_params;
  std::size_t n_min = 1, n_max = 10;
  gen->add_option("--family", family, "hidden_chain, outtree_static, intree, average_lb, static_order_lb");
  gen->add_option("--params,--param", gen_params, "key=value, e.g. k=4 l=7");
  gen->add_option("--random", random_kind, "chains, out_forest, in_forest, general, independent");
  gen->add_option("--n-min", n_min);
  gen->add_option("--n-max", n_max);
  gen->add_option("--out,-o", gen_out, "Instance JSON (stdout when absent)");
  gen->add_option("--sidecar", sidecar_out, "Reference values JSON (default <out>.meta.json)");

  // opt
  auto* opt = app.add_subcommand("opt", "Exact optimum of an instance");
  std::string opt_instance, solver = "auto";
  std::size_t opt_m = 1;
  opt->add_option("--instance,-i", opt_instance)->required();
  opt->add_option("--solver", solver)->check(CLI::IsMember({"auto", "chain_exact", "brute_force"}));
  opt->add_option("--machines,-m", opt_m);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run one policy on one instance");
  std::string sim_instance, sim_policy, sim_noise, sim_out, sim_trace;
  std::size_t sim_m = 1;
  sim->add_option("--instance,-i", sim_instance)->required();
  sim->add_option("--policy,-p", sim_policy, "Registry name or policy JSON")->required();
  sim->add_option("--noise", sim_noise, "Noise JSON applied to truth predictions");
  sim->add_option("--machines,-m", sim_m);
  sim->add_option("--out,-o", sim_out, "Completion CSV");
  sim->add_option("--trace", sim_trace, "Segment trace as JSON lines");

  // predict
  auto* pred = app.add_subcommand("predict", "Write a truth (or perturbed) prediction bundle");
  std::string pred_instance, pred_model, pred_noise, pred_out;
  pred->add_option("--instance,-i", pred_instance)->required();
  pred->add_option("--model", pred_model)->required();
  pred->add_option("--noise", pred_noise);
  pred->add_option("--out,-o", pred_out);

  // eval
  auto* eval = app.add_subcommand("eval", "Error measures of a prediction bundle on an instance");
  std::string eval_instance, eval_pred, eval_eps = "1/10";
  eval->add_option("--instance,-i", eval_instance)->required();
  eval->add_option("--predictions", eval_pred)->required();
  eval->add_option("--epsilon", eval_eps, "For L(eps) on adaptive orders");

  // run
  auto* runc = app.add_subcommand("run", "Run an experiment spec");
  std::string spec_path, csv_out, json_out;
  std::size_t workers = 0;
  int precision = 6;
  bool no_wall = false;
  runc->add_option("--spec,-s", spec_path)->required();
  runc->add_option("--csv", csv_out, "CSV output (stdout when neither --csv nor --json)");
  runc->add_option("--json", json_out, "Rows as JSON for report");
  runc->add_option("--workers", workers, "Overrides NCSCHED_WORKERS");
  runc->add_option("--precision", precision);
  runc->add_flag("--no-wall", no_wall, "Drop the wall_ms column");

  // report
  auto* rep = app.add_subcommand("report", "Render rows written by run --json");
  std::string rows_path, format = "csv", rep_out;
  int rep_precision = 6;
  bool rep_no_wall = false;
  rep->add_option("--rows", rows_path)->required();
  rep->add_option("--format", format)->check(CLI::IsMember({"csv", "summary"}));
  rep->add_option("--precision", rep_precision);
  rep->add_flag("--no-wall", rep_no_wall);
  rep->add_option("--out,-o", rep_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_json("Usage", e.what()).dump() << '\n';
    return 2;
  }

  try {
    if (*gen) {
      Json sidecar;
      Instance inst;
      if (!family.empty() == !random_kind.empty()) throw Error(Errc::InvalidSpec, "gen needs exactly one of --family, --random");
      if (!family.empty()) {
        adversarial::FamilySpec f = adversarial::generate(family, parse_params(gen_params));
        inst = f.instance;
        sidecar = f.sidecar();
      } else {
        harness::RandomModel model;
        model.kind = harness::random_kind_from_name(random_kind);
        model.n_min = n_min;
        model.n_max = n_max;
        Json doc = harness::random_model_to_json(model);
        model = harness::random_model_from_json(doc);
        std::mt19937_64 rng(seed);
        inst = harness::random_instance(model, rng);
        sidecar = {{"random", doc}, {"seed", seed}, {"nodes", inst.size()},
                   {"topology", topology_name(classify_topology(inst).kind)}};
      }
      emit(instance_to_json(inst).dump(2) + "\n", gen_out);
      std::string side = sidecar_out.empty() && !gen_out.empty() ? gen_out + ".meta.json" : sidecar_out;
      if (!side.empty()) write_text_file(side, sidecar.dump(2) + "\n");
    } else if (*opt) {
      Instance inst = instance_from_json(read_json_file(opt_instance));
      oracles::OptResult r;
      if (solver == "chain_exact") {
        if (opt_m != 1) throw Error(Errc::InvalidSpec, "chain_exact is single-machine only");
        r = oracles::opt_chain_exact(inst);
      } else if (solver == "brute_force" || opt_m != 1) {
        r = oracles::opt_brute_force(inst, opt_m);
      } else {
        r = oracles::optimal_order(inst);
      }
      Json out = {{"objective", to_string(r.objective)}, {"order", r.order},
                  {"solver", oracles::solver_name(r.solver)}, {"machines", opt_m}};
      if (opt_m > 1) out["preemptive_lower_bound"] = to_string(oracles::preemptive_lower_bound(inst, opt_m).value());
      std::cout << out.dump(2) << '\n';
    } else if (*sim) {
      Instance inst = instance_from_json(read_json_file(sim_instance));
      harness::BundleProvider provider = [&](predictions::Model model, std::size_t slot) {
        return make_bundle(inst, model, sim_noise, seed + slot);
      };
      PolicyPtr policy = harness::make_policy(policy_arg(sim_policy), provider, sim_m);
      Simulation s = simulate(inst, *policy, sim_m);
      emit(result_to_csv(s.result), sim_out);
      if (!sim_trace.empty()) write_text_file(sim_trace, trace_to_jsonl(s.trace));
      std::cerr << Json{{"objective", to_string(s.result.objective)},
                        {"makespan", to_string(s.result.makespan)},
                        {"rho", to_string(min_rho_witness(s.trace, inst))}}
                       .dump()
                << '\n';
    } else if (*pred) {
      Instance inst = instance_from_json(read_json_file(pred_instance));
      predictions::PredictionBundle b = make_bundle(inst, predictions::model_from_name(pred_model), pred_noise, seed);
      emit(predictions::bundle_to_json(b).dump(2) + "\n", pred_out);
    } else if (*eval) {
      Instance inst = instance_from_json(read_json_file(eval_instance));
      predictions::PredictionBundle b = predictions::bundle_from_json(read_json_file(eval_pred));
      Json out = Json::array();
      using predictions::Model;
      switch (b.model) {
        case Model::AdaptiveWeights:
          out.push_back(predictions::distortion_error(inst, b.weights()).to_json());
          break;
        case Model::ActionsStatic:
        case Model::ActionsAdaptive:
          out.push_back(predictions::eta_inversions(inst, b.ranking()).to_json());
          break;
        case Model::Input:
          out.push_back(predictions::lambda_error(b.chains(), inst).to_json());
          break;
        case Model::AdaptiveOrder: {
          // L(eps) depends on the run, so replay order_adaptive with this ranking
          policies::OrderAdaptive policy(b.ranking());
          Simulation s = simulate(inst, policy);
          out.push_back(predictions::l_eps_error(s.trace, policy.history(), inst, parse_rational(eval_eps)).to_json());
          break;
        }
        default:
          break;
      }
      std::cout << Json{{"model", predictions::model_name(b.model)}, {"measures", out}}.dump(2) << '\n';
    } else if (*runc) {
      harness::ExperimentSpec spec = harness::spec_from_json(read_json_file(spec_path));
      harness::RunOptions options;
      options.workers = workers;
      options.master_seed = seed;
      std::vector<harness::ResultRow> rows = harness::run(spec, options);
      harness::CsvOptions csv;
      csv.precision = precision;
      csv.wall_time = !no_wall;
      if (!json_out.empty()) write_text_file(json_out, harness::rows_to_json(rows).dump(2) + "\n");
      if (!csv_out.empty() || json_out.empty()) emit(harness::rows_to_csv(rows, csv), csv_out);
    } else if (*rep) {
      std::vector<harness::ResultRow> rows = harness::rows_from_json(read_json_file(rows_path));
      harness::CsvOptions csv;
      csv.precision = rep_precision;
      csv.wall_time = !rep_no_wall;
      emit(format == "csv" ? harness::rows_to_csv(rows, csv) : harness::rows_to_summary(rows, rep_precision), rep_out);
    }
  } catch (const Error& e) {
    std::cerr << error_json(errc_name(e.code()), e.what()).dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << error_json("Internal", e.what()).dump() << '\n';
    return 1;
  }
  return 0;
}
