#include "ncsched/engine/rate_monitor.hpp"

#include "ncsched/core/structure.hpp"
#include "ncsched/error.hpp"

namespace ncsched {

ExtendedRational min_rho_witness(const Trace& trace, const Instance& instance) {
  if (trace.completions.size() != instance.size()) {
    throw Error(Errc::TraceInstanceMismatch, "trace completes " + std::to_string(trace.completions.size()) +
                                                 " jobs, instance has " + std::to_string(instance.size()));
  }
  std::vector<Rational> ws = successor_weights(instance);
  Rational machines(static_cast<unsigned long>(trace.machines));
  Rational rho(0);
  for (const Segment& seg : trace.segments) {
    for (const auto& [id, r] : seg.rates) {
      if (!instance.contains(id)) {
        throw Error(Errc::TraceInstanceMismatch, "trace job " + std::to_string(id) + " not in instance");
      }
    }
    if (seg.unfinished_weight <= 0) continue;
    for (JobId j : seg.front) {
      if (!instance.contains(j)) {
        throw Error(Errc::TraceInstanceMismatch, "trace job " + std::to_string(j) + " not in instance");
      }
      const Rational& r = seg.rate(j);
      if (r == 0) {
        if (ws[j] > 0) return ExtendedRational::infinity();
        continue;
      }
      if (trace.machines > 1 && r == 1) continue;
      Rational need = ws[j] / (r * seg.unfinished_weight);
      if (trace.machines > 1) need *= machines;
      if (need > rho) rho = need;
    }
  }
  return rho;
}

}  // namespace ncsched
