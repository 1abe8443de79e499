#pragma once

// Physical parameters of a non-relativistic particle in a screw-dislocation
// background (rotating frame, Aharonov-Bohm flux, oscillator plus
// inverse-square potential) and the exact maps between energy and the
// spectral parameter quantized by the radial equation.
//
// Natural units hbar = c = 1 throughout.

#include <string_view>

namespace heunspec {

enum class Model {
  OscillatorInverseSquare,  // V = gamma/r^2 + delta, plus M w0^2 r^2 / 2
  InverseSquareOnly,        // V = gamma/r^2
};

/// Which Gaussian rate multiplies x = r^2/beta^2 in the transformed equation.
///
/// `Scaled` (omega = M w0 beta^2) is the rate that makes the x-form of the
/// radial equation the exact image of the r-form. `AsPrinted`
/// (omega = M w0 beta) reproduces the literature formulas verbatim; with it
/// the two forms differ by the oscillator term.
enum class OmegaConvention { Scaled, AsPrinted };

struct PhysicalParams {
  double mass = 1.0;
  double omega0 = 1.0;  // oscillator frequency
  double gamma = 0.0;   // inverse-square strength, >= 0
  double delta = 0.0;   // potential offset
  double beta = 0.5;    // screw-dislocation parameter, 0 < beta < 1
  double Omega = 0.0;   // rotating-frame angular speed
  double flux = 0.0;    // Phi_AB / Phi_0
  double k = 1.0;       // longitudinal wavenumber, > 0
  int ell = 0;
  Model model = Model::OscillatorInverseSquare;
  OmegaConvention omega_convention = OmegaConvention::Scaled;
};

struct DerivedParams {
  double iota = 0.0;   // effective angular momentum ell - flux - beta k
  double omega = 0.0;  // Gaussian rate in x, 0 for InverseSquareOnly
  double j = 0.5;      // sqrt(2 M gamma + 1/4)
  double beta = 0.5;   // carried along: the series works in beta^2-scaled units
};

/// Lambda (oscillator model) or Theta (inverse-square model), tagged so the
/// two can never be mixed.
struct SpectralParameter {
  double value = 0.0;
  Model model = Model::OscillatorInverseSquare;
};

/// Throws InvalidParameter naming the first violated invariant.
void validate(const PhysicalParams& p);

/// True when the flux is negative: accepted, but outside the range the
/// model was formulated for.
bool flux_warning(const PhysicalParams& p);

DerivedParams derive_params(const PhysicalParams& p);

double spectral_to_energy(SpectralParameter s, const PhysicalParams& p);
SpectralParameter energy_to_spectral(double energy, const PhysicalParams& p);

std::string_view to_string(Model m);
std::string_view to_string(OmegaConvention c);

/// Parses "oscillator" / "inverse-square"; throws InvalidParameter.
Model parse_model(std::string_view name);
OmegaConvention parse_omega_convention(std::string_view name);

}  // namespace heunspec
