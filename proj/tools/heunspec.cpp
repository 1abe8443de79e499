// heunspec: energies, sweeps, oracle spectra, wavefunctions and the
// verification suite from the command line. Parsing only; every command body
// lives in the library.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "heunspec/commands.hpp"
#include "heunspec/errors.hpp"

namespace {

using namespace heunspec;

struct Common {
  std::string model = "oscillator";
  double mass = 1.0;
  std::optional<double> omega0;
  double gamma = 0.0;
  double delta = 0.0;
  double beta = 0.5;
  double Omega = 0.0;
  double flux = 0.0;
  double k = 1.0;
  int ell = 0;
  std::string omega_convention = "scaled";
  std::string out = "-";

  void attach(CLI::App* app) {
    app->add_option("--model", model, "oscillator | inverse-square")->capture_default_str();
    app->add_option("--mass", mass, "particle mass M")->capture_default_str();
    app->add_option("--omega0", omega0,
                    "oscillator frequency (default 1, or 0 for inverse-square)");
    app->add_option("--gamma", gamma, "inverse-square strength")->capture_default_str();
    app->add_option("--delta", delta, "potential offset")->capture_default_str();
    app->add_option("--beta", beta, "screw-dislocation parameter")->capture_default_str();
    app->add_option("--Omega", Omega, "rotating-frame angular speed")->capture_default_str();
    app->add_option("--flux", flux, "Aharonov-Bohm flux in flux quanta")->capture_default_str();
    app->add_option("--k", k, "longitudinal wavenumber")->capture_default_str();
    app->add_option("--ell", ell, "angular quantum number")->capture_default_str();
    app->add_option("--omega-convention", omega_convention,
                    "scaled (M w0 beta^2) | printed (M w0 beta)")
        ->capture_default_str();
    app->add_option("--out", out, "output path, - for stdout")->capture_default_str();
  }

  PhysicalParams params() const {
    PhysicalParams p;
    p.model = parse_model(model);
    p.mass = mass;
    p.omega0 = omega0.value_or(p.model == Model::InverseSquareOnly ? 0.0 : 1.0);
    p.gamma = gamma;
    p.delta = delta;
    p.beta = beta;
    p.Omega = Omega;
    p.flux = flux;
    p.k = k;
    p.ell = ell;
    p.omega_convention = parse_omega_convention(omega_convention);
    return p;
  }
};

// Runs a command with its output routed to --out.
template <class Fn>
int with_output(const std::string& path, Fn&& fn) {
  if (path == "-") return fn(std::cout);
  std::ofstream file(path);
  if (!file) {
    std::cerr << R"({"error":"invalid parameter","message":"cannot open output file"})" << '\n';
    return kExitInvalid;
  }
  return fn(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of a rotating oscillator with Aharonov-Bohm flux in a screw-dislocation "
               "background"};
  app.require_subcommand(1);

  // energy
  Common energy_common;
  EnergyArgs energy;
  std::string energy_method = "closed-form";
  auto* energy_cmd = app.add_subcommand("energy", "n-th level(s) as JSON or CSV");
  energy_common.attach(energy_cmd);
  energy_cmd->add_option("--n", energy.n, "radial mode, >= 1")->capture_default_str();
  energy_cmd->add_option("--branch", energy.branch, "all | plus | minus | root_<k>")
      ->capture_default_str();
  energy_cmd->add_option("--method", energy_method, "closed-form | truncation")
      ->capture_default_str();
  energy_cmd->add_option("--format", energy.format, "json | csv")->capture_default_str();

  // sweep
  Common sweep_common;
  SweepArgs sweep;
  std::string sweep_param = "flux", sweep_method = "closed-form";
  auto* sweep_cmd = app.add_subcommand("sweep", "levels along a parameter grid (CSV)");
  sweep_common.attach(sweep_cmd);
  sweep_cmd->add_option("--param", sweep_param, "flux | beta | Omega | gamma | omega0 | k | ell")
      ->capture_default_str();
  sweep_cmd->add_option("--from", sweep.spec.from)->required();
  sweep_cmd->add_option("--to", sweep.spec.to)->required();
  sweep_cmd->add_option("--steps", sweep.spec.steps)->required();
  sweep_cmd->add_option("--method", sweep_method, "closed-form | truncation")
      ->capture_default_str();
  sweep_cmd->add_option("--n", sweep.n)->capture_default_str();
  sweep_cmd->add_option("--jobs", sweep.jobs, "worker threads")->capture_default_str();
  sweep_cmd->add_option("--format", sweep.format, "csv | json")->capture_default_str();
  sweep_cmd->add_option("--gnuplot", sweep.gnuplot, "also write a gnuplot script here");

  // oracle
  Common oracle_common;
  OracleArgs oracle;
  std::string oracle_mode = "flat", oracle_scheme = "conservative";
  auto* oracle_cmd = app.add_subcommand("oracle", "finite-difference spectrum (CSV)");
  oracle_common.attach(oracle_cmd);
  oracle_cmd->add_option("--mode", oracle_mode, "outer | core | flat")->capture_default_str();
  oracle_cmd->add_option("--points", oracle.points)->capture_default_str();
  oracle_cmd->add_option("--rmin", oracle.r_min);
  oracle_cmd->add_option("--rmax", oracle.r_max);
  oracle_cmd->add_option("--neigs", oracle.neigs)->capture_default_str();
  oracle_cmd->add_option("--scheme", oracle_scheme, "conservative | liouville")
      ->capture_default_str();
  oracle_cmd->add_flag("--report", oracle.report,
                       "compare n = 1 levels with Core/Outer/Flat spectra (JSON)");
  oracle_cmd->add_option("--format", oracle.format, "csv | json")->capture_default_str();

  // verify
  VerifyArgs verify;
  bool tamper = false;
  std::string verify_out = "-";
  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
  verify_cmd->add_flag("--fast", verify.options.fast, "fewer random draws");
  verify_cmd->add_option("--seed", verify.options.seed)->capture_default_str();
  verify_cmd->add_option("--format", verify.format, "table | json | both")->capture_default_str();
  verify_cmd->add_option("--out", verify_out)->capture_default_str();
  verify_cmd->add_flag("--tamper-recurrence-sign", tamper)->group("");

  // wavefunction
  Common wave_common;
  WavefunctionArgs wave;
  auto* wave_cmd = app.add_subcommand("wavefunction", "radial profile of a level (CSV)");
  wave_common.attach(wave_cmd);
  wave_cmd->add_option("--method", wave.method, "closed-form | truncation | series")
      ->capture_default_str();
  wave_cmd->add_option("--branch", wave.branch, "plus | minus | root_<k>")->capture_default_str();
  wave_cmd->add_option("--n", wave.n)->capture_default_str();
  wave_cmd->add_option("--spectral", wave.spectral, "spectral parameter for --method series");
  wave_cmd->add_option("--order", wave.order, "series order")->capture_default_str();
  wave_cmd->add_option("--xmax", wave.xmax)->capture_default_str();
  wave_cmd->add_option("--samples", wave.samples)->capture_default_str();
  wave_cmd->add_option("--coefficients", wave.coefficients, "also write i,c_i CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << nlohmann::json{{"error", "invalid arguments"}, {"message", e.what()}}.dump()
              << '\n';
    return kExitInvalid;
  }

  try {
    if (energy_cmd->parsed()) {
      energy.params = energy_common.params();
      energy.method = parse_level_method(energy_method);
      return with_output(energy_common.out,
                         [&](std::ostream& out) { return cmd_energy(energy, out, std::cerr); });
    }
    if (sweep_cmd->parsed()) {
      sweep.spec.fixed = sweep_common.params();
      sweep.spec.parameter = parse_sweep_parameter(sweep_param);
      sweep.method = parse_level_method(sweep_method);
      sweep.data_path = sweep_common.out;
      return with_output(sweep_common.out,
                         [&](std::ostream& out) { return cmd_sweep(sweep, out, std::cerr); });
    }
    if (oracle_cmd->parsed()) {
      oracle.params = oracle_common.params();
      oracle.mode = parse_grid_mode(oracle_mode);
      if (oracle_scheme == "conservative")
        oracle.scheme = Discretization::Conservative;
      else if (oracle_scheme == "liouville")
        oracle.scheme = Discretization::LiouvilleCentral;
      else
        throw InvalidParameter("unknown scheme '" + oracle_scheme + "'");
      return with_output(oracle_common.out,
                         [&](std::ostream& out) { return cmd_oracle(oracle, out, std::cerr); });
    }
    if (verify_cmd->parsed()) {
      if (tamper) verify.options.series_variant = RecurrenceVariant::SignTampered;
      return with_output(verify_out,
                         [&](std::ostream& out) { return cmd_verify(verify, out, std::cerr); });
    }
    if (wave_cmd->parsed()) {
      wave.params = wave_common.params();
      return with_output(wave_common.out,
                         [&](std::ostream& out) { return cmd_wavefunction(wave, out, std::cerr); });
    }
  } catch (const std::exception& e) {
    return report_error(std::cerr, e);
  }
  return kExitInvalid;
}
