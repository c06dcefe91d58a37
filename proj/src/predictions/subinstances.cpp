#include "ncsched/predictions/subinstances.hpp"

#include "ncsched/core/structure.hpp"
#include "ncsched/error.hpp"

namespace ncsched::predictions {

WeightSubinstances build_weight_subinstances(const Instance& chains, const WeightTable& predictions) {
  InstanceBuilder predicted, under, over, pruned;
  for (const std::vector<JobId>& c : chains_of(chains)) {
    auto it = predictions.find(c.front());
    Rational hat = it == predictions.end() ? Rational(0) : it->second;
    if (hat < 0) throw Error(Errc::OutOfRange, "chain prediction must be non-negative");
    Rational total(0);
    for (JobId j : c) total += chains.w(j);

    std::vector<std::pair<Rational, Rational>> chat;  // (p, ŵ)
    std::vector<std::pair<Rational, Rational>> cp;
    if (hat == total) {
      for (JobId j : c) chat.emplace_back(chains.p(j), chains.w(j));
      cp = chat;
    } else if (hat < total) {
      // shortest prefix whose weight reaches Ŵ_c; its last job absorbs the difference
      Rational prefix(0), processing(0);
      std::size_t k = 0;
      while (k < c.size()) {
        prefix += chains.w(c[k]);
        processing += chains.p(c[k]);
        ++k;
        if (hat <= prefix) break;
      }
      for (std::size_t i = 0; i + 1 < k; ++i) chat.emplace_back(chains.p(c[i]), chains.w(c[i]));
      Rational head_part = hat - (prefix - chains.w(c[k - 1]));
      chat.emplace_back(chains.p(c[k - 1]), head_part);
      cp = chat;
      std::vector<std::pair<Rational, Rational>> cu{{processing, Rational(prefix - hat)}};
      for (std::size_t i = k; i < c.size(); ++i) cu.emplace_back(chains.p(c[i]), chains.w(c[i]));
      under.chain(cu);
    } else {
      Rational processing(0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        processing += chains.p(c[i]);
        chat.emplace_back(chains.p(c[i]), chains.w(c[i]));
      }
      cp = chat;
      chat.back().second = hat - (total - chains.w(c.back()));
      over.chain({{processing, Rational(hat - total)}});
    }
    predicted.chain(chat);
    pruned.chain(cp);
  }
  return {predicted.build(), under.build(), over.build(), pruned.build()};
}

}  // namespace ncsched::predictions
