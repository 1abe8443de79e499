#include "heunspec/commands.hpp"

#include <fstream>

#include <fmt/format.h>

#include "heunspec/errors.hpp"
#include "heunspec/io.hpp"
#include "heunspec/spectrum.hpp"

namespace heunspec {
namespace {

void warn_flux(const PhysicalParams& p, std::ostream& err) {
  if (flux_warning(p))
    err << nlohmann::json{{"warning", "negative flux"}, {"flux", p.flux}}.dump() << '\n';
}

int no_level(std::ostream& err, const std::string& message) {
  err << nlohmann::json{{"error", "no real level"}, {"message", message}}.dump() << '\n';
  return kExitNoLevel;
}

// all | plus | minus | root_<k>
bool branch_matches(const std::string& wanted, const EnergyLevel& level) {
  return wanted == "all" || wanted == branch_label(level);
}

void check_branch_name(const std::string& b) {
  if (b == "all" || b == "plus" || b == "minus") return;
  if (b.rfind("root_", 0) == 0 && b.size() > 5 &&
      b.find_first_not_of("0123456789", 5) == std::string::npos)
    return;
  throw InvalidParameter("unknown branch '" + b + "'");
}

void check_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (f == a) return;
  throw InvalidParameter("unsupported format '" + f + "'");
}

std::vector<EnergyLevel> select_levels(const EnergyArgs& a) {
  check_branch_name(a.branch);
  if (a.method == LevelMethod::ClosedForm) {
    if (a.n != 1) throw InvalidParameter("closed-form levels exist for n = 1 only");
    std::vector<EnergyLevel> levels;
    for (Branch b : {Branch::Minus, Branch::Plus}) {
      if (a.branch != "all" && a.branch != (b == Branch::Plus ? "plus" : "minus")) continue;
      levels.push_back(ground_state_closed_form(a.params, b));
    }
    if (levels.empty()) throw InvalidParameter("branch '" + a.branch + "' has no closed form");
    return levels;
  }
  std::vector<EnergyLevel> levels;
  for (const auto& l : truncation_solve(a.params, a.n))
    if (branch_matches(a.branch, l)) levels.push_back(l);
  return levels;
}

std::string gnuplot_stub(const SweepArgs& a) {
  const std::string data = a.data_path.empty() || a.data_path == "-" ? "sweep.csv" : a.data_path;
  return fmt::format(
      "set datafile separator ','\n"
      "set key autotitle columnhead\n"
      "set xlabel '{}'\n"
      "set ylabel 'energy'\n"
      "plot '{}' using 1:(strcol(3) eq 'minus' ? $4 : 1/0) with linespoints title 'minus', \\\n"
      "     '{}' using 1:(strcol(3) eq 'plus' ? $4 : 1/0) with linespoints title 'plus'\n",
      to_string(a.spec.parameter), data, data);
}

}  // namespace

int report_error(std::ostream& err, const std::exception& e) {
  nlohmann::json j{{"message", e.what()}};
  int code = kExitInvalid;
  if (const auto* nd = dynamic_cast<const NegativeDiscriminant*>(&e)) {
    j["error"] = "negative discriminant";
    j["discriminant"] = nd->value();
    code = kExitNoLevel;
  } else if (dynamic_cast<const LevelMissing*>(&e)) {
    j["error"] = "level missing";
    code = kExitNoLevel;
  } else if (dynamic_cast<const ModelMismatch*>(&e)) {
    j["error"] = "model mismatch";
  } else if (dynamic_cast<const SingularPoint*>(&e)) {
    j["error"] = "singular point";
  } else if (dynamic_cast<const DomainError*>(&e)) {
    j["error"] = "domain error";
  } else if (dynamic_cast<const GridTooCoarse*>(&e)) {
    j["error"] = "grid too coarse";
  } else if (dynamic_cast<const DivergingSeries*>(&e)) {
    j["error"] = "diverging series";
  } else if (dynamic_cast<const InvalidParameter*>(&e)) {
    j["error"] = "invalid parameter";
  } else {
    j["error"] = "internal error";
  }
  err << j.dump() << '\n';
  return code;
}

int cmd_energy(const EnergyArgs& args, std::ostream& out, std::ostream& err) {
  try {
    check_format(args.format, {"json", "csv"});
    validate(args.params);
    warn_flux(args.params, err);
    const std::vector<EnergyLevel> levels = select_levels(args);
    if (levels.empty()) return no_level(err, "truncation polynomial has no real root");
    if (args.format == "csv")
      out << levels_csv(levels);
    else
      out << levels_to_json(levels).dump(2) << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    return report_error(err, e);
  }
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  try {
    check_format(args.format, {"csv", "json"});
    warn_flux(args.spec.fixed, err);
    const auto rows = run_sweep(args.spec, args.method, args.n, args.jobs);
    if (args.format == "csv") {
      out << sweep_csv(rows);
    } else {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& row : rows) {
        nlohmann::json r{{"param_value", row.param_value}, {"ell", row.ell},
                         {"branch", row.branch}};
        if (row.level) r["level"] = level_to_json(*row.level);
        j.push_back(std::move(r));
      }
      out << j.dump(2) << '\n';
    }
    if (!args.gnuplot.empty()) {
      std::ofstream script(args.gnuplot);
      if (!script) throw InvalidParameter("cannot write " + args.gnuplot);
      script << gnuplot_stub(args);
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return report_error(err, e);
  }
}

int cmd_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err) {
  try {
    check_format(args.format, {"csv", "json"});
    validate(args.params);
    warn_flux(args.params, err);
    if (args.report) {
      out << oracle_report_to_json(
                 oracle_vs_closed_form_report(args.params, args.points, args.neigs))
                 .dump(2)
          << '\n';
      return kExitOk;
    }
    GridSpec g = default_grid(args.params, args.mode, args.points);
    if (args.r_min) g.r_min = *args.r_min;
    if (args.r_max) g.r_max = *args.r_max;
    const OracleResult r = oracle_eigenvalues(args.params, g, args.neigs, args.scheme);
    if (args.format == "csv") {
      out << oracle_csv(r);
    } else {
      out << nlohmann::json{{"mode", std::string(to_string(g.mode))},
                            {"eigenvalues", r.eigenvalues},
                            {"residual_norms", r.residual_norms},
                            {"n_points", g.n_points},
                            {"r_min", r.r_lo},
                            {"r_max", r.r_hi}}
                 .dump(2)
          << '\n';
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return report_error(err, e);
  }
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  try {
    check_format(args.format, {"table", "json", "both"});
    const VerifyReport report = run_verify(args.options);
    if (args.format != "json") out << report_table(report);
    if (args.format != "table") out << report_to_json(report).dump(2) << '\n';
    return report.overall == CheckStatus::Pass ? kExitOk : kExitInvalid;
  } catch (const std::exception& e) {
    return report_error(err, e);
  }
}

int cmd_wavefunction(const WavefunctionArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const PhysicalParams& p = args.params;
    validate(p);
    warn_flux(p, err);
    check_branch_name(args.branch);
    SeriesSolution sol;
    if (args.method == "closed-form") {
      if (args.n != 1) throw InvalidParameter("closed-form wavefunction exists for n = 1 only");
      if (args.branch != "plus" && args.branch != "minus")
        throw InvalidParameter("closed-form wavefunction needs --branch plus or minus");
      sol = ground_state_wavefunction(p, args.branch == "plus" ? Branch::Plus : Branch::Minus)
                .solution;
    } else if (args.method == "truncation") {
      std::optional<EnergyLevel> chosen;
      for (const auto& l : truncation_solve(p, args.n))
        if (branch_label(l) == args.branch) chosen = l;
      if (!chosen)
        throw LevelMissing("no truncation root labelled '" + args.branch + "' at n = " +
                           std::to_string(args.n));
      const int order = std::max(args.order, args.n + 2);
      sol = series_coefficients(derive_params(p), {chosen->spectral, p.model}, order);
      if (chosen->termination_defect <= 1e-12) {
        sol.coeffs.resize(args.n + 1);
        sol.terminating = true;
      }
    } else if (args.method == "series") {
      if (!args.spectral) throw InvalidParameter("series method needs --spectral");
      sol = series_coefficients(derive_params(p), {*args.spectral, p.model}, args.order);
    } else {
      throw InvalidParameter("unknown method '" + args.method + "'");
    }

    const auto samples = sample_wavefunction(sol, args.xmax, args.samples);
    std::string text = "x,r,psi,dpsi_dx\n";
    for (const auto& s : samples)
      text += fmt::format("{},{},{},{}\n", format_number(s.x), format_number(s.r),
                          format_number(s.psi), format_number(s.dpsi_dx));
    out << text;
    if (!args.coefficients.empty()) {
      std::ofstream coeffs(args.coefficients);
      if (!coeffs) throw InvalidParameter("cannot write " + args.coefficients);
      coeffs << coefficients_csv(sol);
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return report_error(err, e);
  }
}

}  // namespace heunspec
