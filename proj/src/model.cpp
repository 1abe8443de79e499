#include "heunspec/model.hpp"

#include <cmath>
#include <string>

#include "heunspec/errors.hpp"

namespace heunspec {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidParameter(std::string("invalid parameter: ") + what);
}

}  // namespace

void validate(const PhysicalParams& p) {
  require(std::isfinite(p.mass) && p.mass > 0.0, "mass must be > 0");
  require(std::isfinite(p.k) && p.k > 0.0, "k must be > 0");
  require(std::isfinite(p.beta) && p.beta > 0.0 && p.beta < 1.0,
          "beta must lie in (0, 1)");
  require(std::isfinite(p.gamma) && p.gamma >= 0.0, "gamma must be >= 0");
  require(2.0 * p.mass * p.gamma + 0.25 >= 0.0,
          "2 M gamma + 1/4 must be >= 0");
  require(std::isfinite(p.omega0) && p.omega0 >= 0.0, "omega0 must be >= 0");
  require(std::isfinite(p.delta) && std::isfinite(p.Omega) &&
              std::isfinite(p.flux),
          "delta, Omega and flux must be finite");
  if (p.model == Model::OscillatorInverseSquare) {
    require(p.omega0 > 0.0, "oscillator model requires omega0 > 0");
  } else {
    require(p.omega0 == 0.0, "inverse-square model requires omega0 = 0");
    require(p.delta == 0.0, "inverse-square model requires delta = 0");
  }
}

bool flux_warning(const PhysicalParams& p) { return p.flux < 0.0; }

DerivedParams derive_params(const PhysicalParams& p) {
  validate(p);
  DerivedParams d;
  // (ell - flux) first: the joint shift (ell, flux) -> (ell + nu, flux + nu)
  // must leave iota unchanged.
  d.iota = (static_cast<double>(p.ell) - p.flux) - p.beta * p.k;
  d.j = std::sqrt(2.0 * p.mass * p.gamma + 0.25);
  d.beta = p.beta;
  if (p.model == Model::OscillatorInverseSquare) {
    const double scale = p.omega_convention == OmegaConvention::Scaled
                             ? p.beta * p.beta
                             : p.beta;
    d.omega = p.mass * p.omega0 * scale;
  }
  return d;
}

double spectral_to_energy(SpectralParameter s, const PhysicalParams& p) {
  if (s.model != p.model)
    throw ModelMismatch("spectral parameter belongs to model " +
                        std::string(to_string(s.model)));
  const double iota = derive_params(p).iota;
  const double offset = p.model == Model::OscillatorInverseSquare ? p.delta : 0.0;
  return (s.value + p.k * p.k) / (2.0 * p.mass) + offset - p.Omega * iota;
}

SpectralParameter energy_to_spectral(double energy, const PhysicalParams& p) {
  const double iota = derive_params(p).iota;
  const double offset = p.model == Model::OscillatorInverseSquare ? p.delta : 0.0;
  return {2.0 * p.mass * (energy + p.Omega * iota - offset) - p.k * p.k,
          p.model};
}

std::string_view to_string(Model m) {
  return m == Model::OscillatorInverseSquare ? "oscillator" : "inverse-square";
}

std::string_view to_string(OmegaConvention c) {
  return c == OmegaConvention::Scaled ? "scaled" : "printed";
}

Model parse_model(std::string_view name) {
  if (name == "oscillator") return Model::OscillatorInverseSquare;
  if (name == "inverse-square") return Model::InverseSquareOnly;
  throw InvalidParameter("unknown model: " + std::string(name));
}

OmegaConvention parse_omega_convention(std::string_view name) {
  if (name == "scaled") return OmegaConvention::Scaled;
  if (name == "printed") return OmegaConvention::AsPrinted;
  throw InvalidParameter("unknown omega convention: " + std::string(name));
}

}  // namespace heunspec
