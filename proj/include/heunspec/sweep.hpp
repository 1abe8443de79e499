#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heunspec/model.hpp"
#include "heunspec/spectrum.hpp"

namespace heunspec {

enum class SweepParameter { Flux, Beta, Omega, Gamma, Omega0, K, Ell };

std::string_view to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(std::string_view name);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::Flux;
  double from = 0.0;
  double to = 1.0;
  int steps = 2;
  PhysicalParams fixed;
};

enum class LevelMethod { ClosedForm, Truncation };

std::string_view to_string(LevelMethod m);
LevelMethod parse_level_method(std::string_view name);

/// Throws InvalidParameter: steps < 2, an end point outside the validity
/// range of the parameter, or non-integer ell values.
void validate(const SweepSpec& spec);

/// Value of the swept parameter at grid point `index`.
double sweep_value(const SweepSpec& spec, int index);
PhysicalParams sweep_point(const SweepSpec& spec, int index);

struct SweepRow {
  double param_value = 0.0;
  int ell = 0;
  std::string branch;
  std::optional<EnergyLevel> level;  // empty when the level does not exist
};

/// Every grid point contributes the same rows: minus and plus for the closed
/// form and for n = 1 truncation, root_0 .. root_n for n >= 2. Rows come out
/// in grid order whatever `jobs` is.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, LevelMethod method, int n = 1,
                                int jobs = 1);

/// Columns: param_value, ell, branch, energy, spectral, discriminant,
/// termination_defect. Missing levels leave the last four cells empty.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace heunspec
