#include <algorithm>

#include "doctest.h"

#include "heunspec/verify.hpp"

using namespace heunspec;

namespace {

const CheckRecord& find(const VerifyReport& r, const std::string& name) {
  const auto it = std::find_if(r.checks.begin(), r.checks.end(),
                               [&](const CheckRecord& c) { return c.name == name; });
  REQUIRE(it != r.checks.end());
  return *it;
}

}  // namespace

TEST_CASE("fast suite passes") {
  VerifyOptions o;
  o.fast = true;
  const VerifyReport r = run_verify(o);
  CHECK(r.checks.size() >= 8);
  CHECK(r.overall == CheckStatus::Pass);
  CHECK(r.wall_seconds < time_budget(true));
  for (int c = 1; c <= 10; ++c)
    CHECK(std::any_of(r.checks.begin(), r.checks.end(),
                      [&](const CheckRecord& k) { return k.criterion == c; }));
  CHECK(find(r, "series_residual").status == CheckStatus::Pass);
  CHECK(find(r, "series_residual_printed_d3").status == CheckStatus::DiscrepantDocumented);
  CHECK(!find(r, "closed_form_audit").findings.empty());

  const auto j = report_to_json(r);
  CHECK(j["overall"] == "PASS");
  CHECK(j["checks"].size() == r.checks.size());
  CHECK(report_table(r).find("series_residual") != std::string::npos);
}

TEST_CASE("a tampered recurrence fails the residual check") {
  VerifyOptions o;
  o.fast = true;
  o.series_variant = RecurrenceVariant::SignTampered;
  const VerifyReport r = run_verify(o);
  CHECK(find(r, "series_residual").status == CheckStatus::Fail);
  CHECK(r.overall == CheckStatus::Fail);
}

TEST_CASE("the same seed gives the same measurements") {
  VerifyOptions o;
  o.fast = true;
  o.seed = 99;
  const VerifyReport a = run_verify(o), b = run_verify(o);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i)
    if (a.checks[i].name != "end_to_end_time") CHECK(a.checks[i].measured == b.checks[i].measured);
}
