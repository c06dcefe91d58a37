#include "ncsched/policies/basic.hpp"

#include <algorithm>

namespace ncsched::policies {

namespace {

class EqualShare final : public Policy {
 public:
  std::string label() const override { return "equal_share"; }

  RateVector rates(const PolicyView& view) override {
    RateVector out;
    if (view.front.empty()) return out;
    Rational r(static_cast<unsigned long>(view.machines), static_cast<unsigned long>(view.front.size()));
    r.canonicalize();
    if (r > 1) r = 1;
    for (const FrontJob& f : view.front) out[f.id] = r;
    return out;
  }

  PolicyPtr fresh() const override { return std::make_unique<EqualShare>(); }
};

}  // namespace

PolicyPtr equal_share() { return std::make_unique<EqualShare>(); }

RateVector capped_proportional(std::vector<std::pair<JobId, Rational>> weights, std::size_t machines) {
  std::sort(weights.begin(), weights.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  Rational total(0);
  for (const auto& [id, w] : weights) total += w;
  RateVector out;
  Rational free_machines(static_cast<unsigned long>(machines));
  std::size_t i = 0;
  while (i < weights.size() && free_machines > 0 && free_machines * weights[i].second >= total) {
    out[weights[i].first] = 1;
    free_machines -= 1;
    total -= weights[i].second;
    ++i;
  }
  for (; i < weights.size(); ++i) {
    out[weights[i].first] = free_machines > 0 ? Rational(free_machines * weights[i].second / total) : Rational(0);
  }
  return out;
}

}  // namespace ncsched::policies
