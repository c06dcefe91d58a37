#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncsched/harness/random_instances.hpp"
#include "ncsched/harness/registry.hpp"
#include "ncsched/predictions/bundle.hpp"

namespace ncsched::harness {

/// Where a sweep's instances come from.
struct InstanceSource {
  enum class Kind { File, Family, Random };
  Kind kind = Kind::Random;
  std::string path;  // File
  std::string family;  // Family
  std::map<std::string, std::int64_t> params;
  RandomModel model;  // Random
  std::size_t count = 1;
  std::optional<std::uint64_t> seed;  // Random; the master seed when absent
};

enum class OracleChoice { Auto, ChainExact, BruteForce, None };
std::string oracle_choice_name(OracleChoice choice);

/// JSON layout:
///   {"name", "instances": {"source": "random"|"family"|"file", ...},
///    "policy": <policy config>, "predictions": {"model", "noise": [..], "epsilon"},
///    "machines", "seeds": [..], "oracle": "auto"|"chain_exact"|"brute_force"|"none"}
struct ExperimentSpec {
  std::string name = "experiment";
  InstanceSource instances;
  PolicyConfig policy;
  std::optional<predictions::Model> model;  // defaults to what the policy consumes
  std::vector<predictions::NoiseSpec> noise_levels{predictions::NoiseSpec{}};
  Rational epsilon{1, 10};  // for L(ε)
  std::size_t machines = 1;
  std::vector<std::uint64_t> seeds;
  OracleChoice oracle = OracleChoice::Auto;
};

/// Throws Parse, UnknownName, InvalidSpec.
ExperimentSpec spec_from_json(const Json& doc);
Json spec_to_json(const ExperimentSpec& spec);
/// Registry names and seeds, before anything runs. Throws UnknownName, InvalidSpec.
void check_spec(const ExperimentSpec& spec);

struct ResultRow {
  std::string experiment;
  std::size_t instance_index = 0;
  std::string instance_label;
  std::size_t noise_index = 0;
  std::string noise;  // compact JSON of the noise level
  std::uint64_t seed = 0;
  std::string policy;
  std::string model = "none";
  std::size_t machines = 1;
  std::size_t n = 0;
  std::string topology;
  std::size_t width = 0;

  std::optional<Rational> alg;
  std::optional<Rational> opt;  // m > 1: nonpreemptive brute force
  std::string opt_kind = "none";
  std::optional<Rational> lower_bound;  // m > 1: preemptive lower bound
  std::optional<Rational> ratio;  // alg / opt
  std::optional<ExtendedRational> rho;
  std::map<std::string, ExtendedRational> errors;  // measure -> value

  std::string status = "ok";  // ok | error
  std::string message;
  double wall_ms = 0;
};

struct RunOptions {
  std::size_t workers = 0;  // 0: NCSCHED_WORKERS, else hardware concurrency
  std::uint64_t master_seed = 0;
};

/// Worker count from NCSCHED_WORKERS, falling back to the hardware.
std::size_t default_workers();

/// All cells (instance × noise level × seed), rows in that order. A failing
/// cell becomes an error row. Throws OracleFailure when a row with a true
/// optimum has ratio < 1, and the check_spec errors up front.
std::vector<ResultRow> run(const ExperimentSpec& spec, const RunOptions& options = {});

/// The instances a spec sweeps over, with labels.
std::vector<std::pair<std::string, Instance>> materialize_instances(const ExperimentSpec& spec, std::uint64_t master_seed);

}  // namespace ncsched::harness
