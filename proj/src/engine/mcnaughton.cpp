#include "ncsched/engine/mcnaughton.hpp"

#include <algorithm>
#include <map>

#include "ncsched/error.hpp"

namespace ncsched {

MachineTimeline realize_mcnaughton(const Segment& segment, std::size_t m) {
  Rational length = segment.length();
  Rational total(0);
  for (const auto& [id, r] : segment.rates) {
    if (r < 0 || r > 1) throw Error(Errc::InfeasibleSegment, "rate " + to_string(r) + " outside [0,1]");
    total += r;
  }
  if (total > Rational(static_cast<unsigned long>(m))) {
    throw Error(Errc::InfeasibleSegment, "segment load exceeds machine count");
  }
  MachineTimeline timeline(m);
  if (total == 0) return timeline;
  if (length <= 0) throw Error(Errc::InfeasibleSegment, "segment length must be positive");

  std::size_t machine = 0;
  Rational pos(0);
  for (const auto& [id, r] : segment.rates) {
    Rational amount = r * length;
    while (amount > 0) {
      Rational take = min(amount, Rational(length - pos));
      timeline[machine].push_back({id, Rational(segment.start + pos), Rational(segment.start + pos + take)});
      pos += take;
      amount -= take;
      if (pos == length) {
        ++machine;
        pos = 0;
      }
    }
  }
  return timeline;
}

std::string check_realization(const Segment& segment, const MachineTimeline& timeline) {
  Rational length = segment.length();
  std::map<JobId, std::vector<std::pair<Rational, Rational>>> by_job;
  for (std::size_t k = 0; k < timeline.size(); ++k) {
    Rational busy(0);
    for (const Piece& p : timeline[k]) {
      if (p.start < segment.start || p.end > segment.end || p.end < p.start) {
        return "piece outside segment on machine " + std::to_string(k);
      }
      busy += p.end - p.start;
      by_job[p.job].emplace_back(p.start, p.end);
    }
    if (busy > length) return "machine " + std::to_string(k) + " overloaded";
  }
  for (const auto& [id, r] : segment.rates) {
    Rational load(0);
    for (const auto& [s, e] : by_job[id]) load += e - s;
    if (load != r * length) return "load mismatch for job " + std::to_string(id);
  }
  for (auto& [id, pieces] : by_job) {
    std::sort(pieces.begin(), pieces.end());
    for (std::size_t i = 1; i < pieces.size(); ++i) {
      if (pieces[i].first < pieces[i - 1].second) {
        return "job " + std::to_string(id) + " on two machines at once";
      }
    }
  }
  return {};
}

}  // namespace ncsched
