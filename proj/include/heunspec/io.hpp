#pragma once

// Stable text formats: 17 significant digits everywhere, CSV for streams,
// JSON for single records.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "heunspec/fd_oracle.hpp"
#include "heunspec/series.hpp"
#include "heunspec/spectrum.hpp"

namespace heunspec {

/// %.17g; "nan" and "inf" spelled out.
std::string format_number(double value);
/// Empty string for a missing value.
std::string format_optional(const std::optional<double>& value);

/// Fields: n, ell, branch, energy, spectral, discriminant,
/// termination_defect, c1_over_c0.
nlohmann::json level_to_json(const EnergyLevel& level);
nlohmann::json levels_to_json(const std::vector<EnergyLevel>& levels);

std::string levels_csv(const std::vector<EnergyLevel>& levels);

/// Header "i,c_i".
std::string coefficients_csv(const SeriesSolution& sol);

/// Header "mode,index,lambda,residual_norm,n_points,r_min,r_max"; r_min and
/// r_max are the ends actually used.
std::string oracle_csv(const OracleResult& result);

nlohmann::json oracle_report_to_json(const OracleReport& report);

}  // namespace heunspec
