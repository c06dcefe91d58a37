#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncsched {

enum class Errc {
  Parse,
  InvalidInstance,
  EmptyInstance,
  UnknownId,
  InfeasibleRates,
  RateOnNonFrontJob,
  PolicyStall,
  InfeasibleSegment,
  TraceInstanceMismatch,
  MissingPrediction,
  BranchingDetected,
  OracleFailure,
  OrderNotTotal,
  MissingInitialJob,
  TopologyMismatch,
  UnmatchedChain,
  TooLarge,
  UndefinedAverage,
  IncompatibleNoise,
  HistoryMismatch,
  OutOfRange,
  NonIntegralLength,
  UnknownName,
  InvalidSpec,
  Io,
};

std::string_view errc_name(Errc code);

/// Single exception type for the library; `code()` names the failure class.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ncsched
