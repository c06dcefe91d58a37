#pragma once

#include <string>
#include <vector>

#include "ncsched/harness/experiment.hpp"

namespace ncsched::harness {

struct CsvOptions {
  int precision = 6;  // decimal columns
  bool wall_time = true;  // off for byte-level comparisons
};

/// One line per row; exact values as num and den columns plus a decimal
/// column. Empty rows give the header alone.
std::string rows_to_csv(const std::vector<ResultRow>& rows, const CsvOptions& options = {});

/// One line per (policy, model, noise level): count, errors, max and mean
/// ratio, max of each error measure.
std::string rows_to_summary(const std::vector<ResultRow>& rows, int precision = 6);

Json rows_to_json(const std::vector<ResultRow>& rows);
/// Throws Parse.
std::vector<ResultRow> rows_from_json(const Json& doc);

}  // namespace ncsched::harness
