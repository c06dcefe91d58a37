#include "ncsched/predictions/perturb.hpp"

#include <cmath>
#include <random>

#include "ncsched/error.hpp"

namespace ncsched::predictions {

namespace {

class Noise {
 public:
  Noise(const NoiseSpec& spec, std::uint64_t seed) : spec_(spec), rng_(seed) {}

  // exp(u) snapped to the grid 1/resolution
  Rational factor() {
    if (!spec_.beta || *spec_.beta == 0) return Rational(1);
    double beta = spec_.beta->get_d();
    std::uniform_real_distribution<double> u(-beta, beta);
    double scaled = std::exp(u(rng_)) * static_cast<double>(spec_.resolution);
    Rational f(mpz_class(std::round(scaled)), mpz_class(std::to_string(spec_.resolution)));
    f.canonicalize();
    return f;
  }

  void swap_adjacent(Ranking& order) {
    std::size_t k = spec_.swaps.value_or(0);
    if (order.size() < 2) return;
    std::uniform_int_distribution<std::size_t> pos(0, order.size() - 2);
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t p = pos(rng_);
      std::swap(order[p], order[p + 1]);
    }
  }

  std::int64_t length_change() {
    if (!spec_.length_delta || *spec_.length_delta == 0) return 0;
    auto l = static_cast<std::int64_t>(*spec_.length_delta);
    std::uniform_int_distribution<std::int64_t> d(-l, l);
    return d(rng_);
  }

 private:
  const NoiseSpec& spec_;
  std::mt19937_64 rng_;
};

void require(bool ok, Model model, const char* field) {
  if (!ok) {
    throw Error(Errc::IncompatibleNoise,
                std::string("noise field '") + field + "' does not apply to model " + model_name(model));
  }
}

}  // namespace

PredictionBundle perturb(const PredictionBundle& bundle, const NoiseSpec& noise, std::uint64_t seed) {
  Model m = bundle.model;
  bool weights = m == Model::StaticWeights || m == Model::AdaptiveWeights || m == Model::Averages;
  bool orders = m == Model::StaticOrder || m == Model::AdaptiveOrder || m == Model::ActionsStatic ||
                m == Model::ActionsAdaptive;
  if (noise.beta) require(weights || m == Model::Input, m, "beta");
  if (noise.swaps) require(orders, m, "swaps");
  if (noise.length_delta) require(m == Model::Input, m, "length_delta");

  PredictionBundle out = bundle;
  out.provenance.perturbed = true;
  out.provenance.seed = seed;
  out.provenance.noise = noise;
  Noise rng(noise, seed);

  if (weights) {
    WeightTable t = bundle.weights();
    for (auto& [id, v] : t) v *= rng.factor();
    out.payload = std::move(t);
  } else if (orders) {
    Ranking r = bundle.ranking();
    rng.swap_adjacent(r);
    out.payload = std::move(r);
  } else {
    policies::PredictedChains chains = bundle.chains();
    for (auto& c : chains) {
      for (auto& job : c.jobs) job.second *= rng.factor();
      std::int64_t delta = rng.length_change();
      if (delta < 0) {
        auto keep = std::max<std::int64_t>(1, static_cast<std::int64_t>(c.jobs.size()) + delta);
        c.jobs.resize(static_cast<std::size_t>(keep));
      } else {
        for (std::int64_t i = 0; i < delta; ++i) c.jobs.emplace_back(Rational(1), Rational(0));
      }
    }
    out.payload = std::move(chains);
  }
  return out;
}

}  // namespace ncsched::predictions
