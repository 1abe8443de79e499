#include "heunspec/io.hpp"

#include <cmath>

#include <fmt/format.h>

namespace heunspec {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", value);
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string();
}

nlohmann::json level_to_json(const EnergyLevel& level) {
  return nlohmann::json{{"n", level.n},
                        {"ell", level.ell},
                        {"branch", branch_label(level)},
                        {"energy", level.energy},
                        {"spectral", level.spectral},
                        {"discriminant", level.discriminant},
                        {"termination_defect", level.termination_defect},
                        {"c1_over_c0", level.c1_over_c0}};
}

nlohmann::json levels_to_json(const std::vector<EnergyLevel>& levels) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& level : levels) out.push_back(level_to_json(level));
  return out;
}

std::string levels_csv(const std::vector<EnergyLevel>& levels) {
  std::string out = "n,ell,branch,energy,spectral,discriminant,termination_defect,c1_over_c0\n";
  for (const auto& l : levels)
    out += fmt::format("{},{},{},{},{},{},{},{}\n", l.n, l.ell, branch_label(l),
                       format_number(l.energy), format_number(l.spectral),
                       format_number(l.discriminant), format_number(l.termination_defect),
                       format_number(l.c1_over_c0));
  return out;
}

std::string coefficients_csv(const SeriesSolution& sol) {
  std::string out = "i,c_i\n";
  for (std::size_t i = 0; i < sol.coeffs.size(); ++i)
    out += fmt::format("{},{}\n", i, format_number(sol.coeffs[i]));
  return out;
}

std::string oracle_csv(const OracleResult& result) {
  std::string out = "mode,index,lambda,residual_norm,n_points,r_min,r_max\n";
  for (std::size_t i = 0; i < result.eigenvalues.size(); ++i)
    out += fmt::format("{},{},{},{},{},{},{}\n", to_string(result.grid.mode), i,
                       format_number(result.eigenvalues[i]),
                       format_number(result.residual_norms[i]), result.grid.n_points,
                       format_number(result.r_lo), format_number(result.r_hi));
  return out;
}

nlohmann::json oracle_report_to_json(const OracleReport& report) {
  nlohmann::json out;
  out["closed_form"] = levels_to_json(report.closed_form);
  out["closed_form_discriminant"] = report.closed_form_discriminant;
  out["truncation"] = levels_to_json(report.truncation);
  out["sections"] = nlohmann::json::array();
  for (const auto& s : report.sections) {
    nlohmann::json js;
    js["mode"] = std::string(to_string(s.mode));
    js["eigenvalues"] = s.oracle.eigenvalues;
    js["residual_norms"] = s.oracle.residual_norms;
    if (s.mode == GridMode::Flat) js["exact"] = s.exact;
    if (!s.error.empty()) js["error"] = s.error;
    js["rows"] = nlohmann::json::array();
    for (const auto& row : s.rows)
      js["rows"].push_back({{"source", row.source},
                            {"spectral", row.spectral},
                            {"nearest_oracle", row.nearest_oracle},
                            {"distance", row.distance}});
    out["sections"].push_back(js);
  }
  out["diagnostic"] = true;
  return out;
}

}  // namespace heunspec
