#pragma once

// The acceptance suite: randomized property checks, oracle comparisons and
// audit findings, collected into one report.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "heunspec/series.hpp"

namespace heunspec {

/// DiscrepantDocumented marks a measured disagreement with the literature
/// formulas; it never fails the suite.
enum class CheckStatus { Pass, Fail, DiscrepantDocumented };

std::string_view to_string(CheckStatus s);

struct CheckRecord {
  std::string name;
  int criterion = 0;  // acceptance criterion number, 0 for supplementary checks
  CheckStatus status = CheckStatus::Pass;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
  std::vector<std::string> findings;  // one line per audited case
  double seconds = 0.0;
};

struct VerifyOptions {
  bool fast = false;
  std::uint64_t seed = 20240917;
  /// Test hook: the recurrence used by the series-residual check.
  RecurrenceVariant series_variant = RecurrenceVariant::Corrected;
};

struct VerifyReport {
  std::vector<CheckRecord> checks;
  CheckStatus overall = CheckStatus::Pass;  // Pass or Fail only
  double wall_seconds = 0.0;
  VerifyOptions options;
};

/// Wall-time budget of the whole suite: 60 s, or 15 s with `fast`.
double time_budget(bool fast);

VerifyReport run_verify(const VerifyOptions& options);

nlohmann::json report_to_json(const VerifyReport& report);
std::string report_table(const VerifyReport& report);

}  // namespace heunspec
