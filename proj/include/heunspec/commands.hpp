#pragma once

// Command bodies behind the heunspec executable. Each writes its result to
// `out`, reports failures as one JSON object on `err`, and returns the
// process exit code: 0 success, 1 invalid input, 2 no real level.

#include <optional>
#include <ostream>
#include <string>

#include "heunspec/fd_oracle.hpp"
#include "heunspec/model.hpp"
#include "heunspec/sweep.hpp"
#include "heunspec/verify.hpp"

namespace heunspec {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNoLevel = 2;

struct EnergyArgs {
  PhysicalParams params;
  int n = 1;
  std::string branch = "all";  // all | plus | minus | root_<k>
  LevelMethod method = LevelMethod::ClosedForm;
  std::string format = "json";  // json | csv
};

struct SweepArgs {
  SweepSpec spec;
  LevelMethod method = LevelMethod::ClosedForm;
  int n = 1;
  int jobs = 1;
  std::string format = "csv";  // csv | json
  std::string gnuplot;         // optional script path
  std::string data_path;       // file the script should plot
};

struct OracleArgs {
  PhysicalParams params;
  GridMode mode = GridMode::Flat;
  int points = 4000;
  std::optional<double> r_min;
  std::optional<double> r_max;
  int neigs = 5;
  Discretization scheme = Discretization::Conservative;
  bool report = false;          // diagnostic closed-form comparison (JSON)
  std::string format = "csv";
};

struct VerifyArgs {
  VerifyOptions options;
  std::string format = "table";  // table | json | both
};

struct WavefunctionArgs {
  PhysicalParams params;
  std::string method = "closed-form";  // closed-form | truncation | series
  std::string branch = "minus";
  int n = 1;
  std::optional<double> spectral;  // series method only
  int order = 200;
  double xmax = 0.9;
  int samples = 200;
  std::string coefficients;  // optional "i,c_i" CSV path
};

int cmd_energy(const EnergyArgs& args, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err);
int cmd_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int cmd_wavefunction(const WavefunctionArgs& args, std::ostream& out, std::ostream& err);

/// Error JSON for an exception thrown anywhere below a command, with its
/// exit code.
int report_error(std::ostream& err, const std::exception& e);

}  // namespace heunspec
