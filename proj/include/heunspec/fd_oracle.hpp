#pragma once

// Finite-difference reference spectrum of the untransformed radial equation
//
//   psi'' + r/(r^2-b^2) psi' + [S - M^2 w0^2 r^2 - 2 M gamma/r^2 - iota^2/(r^2-b^2)] psi = 0,
//
// an exact flat-space (b = 0) spectrum to validate it against, and a
// pointwise check of the separation of the 3D Hamiltonian.

#include <string>
#include <string_view>
#include <vector>

#include "heunspec/model.hpp"
#include "heunspec/radial.hpp"
#include "heunspec/spectrum.hpp"

namespace heunspec {

/// Outer: r > beta. Core: r < beta. Flat: beta set to zero (and iota to
/// ell - flux), r > 0.
enum class GridMode { Outer, Core, Flat };

std::string_view to_string(GridMode mode);
GridMode parse_grid_mode(std::string_view name);

/// Uniform grid of `n_points` cells on [r_min, r_max]. An end that lies
/// within half a cell of a singular point of the equation (r = 0, or r = beta
/// outside Flat mode) is moved onto it.
struct GridSpec {
  double r_min = 1e-6;
  double r_max = 10.0;
  int n_points = 4000;
  GridMode mode = GridMode::Flat;
};

/// Throws InvalidParameter when the grid does not fit its mode.
void validate(const GridSpec& g, const PhysicalParams& p);

/// Flat/Outer: r_max = max(10, 6/sqrt(M w0)) (40 without an oscillator);
/// Core: (eps, beta - eps). eps = 1e-6.
GridSpec default_grid(const PhysicalParams& p, GridMode mode, int n_points = 4000);

/// U in -u'' + U u = S u after psi = |r^2 - b^2|^{-1/4} u. Throws
/// SingularPoint at r = beta, DomainError for r <= 0.
double effective_potential(double r, const PhysicalParams& p);

enum class Discretization {
  /// Flux-conservative cell-centred scheme for (rho psi')'/rho with
  /// rho = sqrt|r^2 - b^2| and exact cell integrals of rho and of the
  /// iota^2 term. Second order up to the singular ends.
  Conservative,
  /// Central differences of -u'' + U u on the vertex grid with Dirichlet
  /// ends. Loses accuracy next to r = 0 and r = beta where U ~ -1/(4 d^2).
  LiouvilleCentral,
};

struct OracleResult {
  std::vector<double> eigenvalues;  // ascending spectral values
  std::vector<double> residual_norms;
  /// Eigenfunctions psi (unit-normalised in the discrete weighted norm) at
  /// `nodes`, first nonzero value positive.
  std::vector<std::vector<double>> eigenvectors;
  std::vector<double> nodes;
  GridSpec grid;       // as requested
  double r_lo = 0.0;   // ends actually used after snapping
  double r_hi = 0.0;
};

/// Lowest `n_eigs` eigenvalues (Sturm bisection) with eigenvectors (inverse
/// iteration). Each pair is checked against the discretized first-derivative
/// form of the equation; a relative residual above 1e-6 throws GridTooCoarse.
OracleResult oracle_eigenvalues(const PhysicalParams& p, const GridSpec& g, int n_eigs,
                                Discretization scheme = Discretization::Conservative);

/// S = 2 M w0 (2 n_r + 1 + s), s = sqrt((ell - flux)^2 + 2 M gamma).
double flat_exact_spectrum(const PhysicalParams& p, int n_r);

enum class OperatorForm {
  /// (1/sqrt|g|) D_i (sqrt|g| g^{ij} D_j) built from the screw-dislocation
  /// metric, including the d_z^2 term.
  MetricLaplacian,
  /// d_r^2 + r/(r^2-b^2) d_r + (D_phi - b d_z)^2/(r^2-b^2) without d_z^2.
  AsPrinted,
};

/// |H Psi - E Psi + phase * radial_lhs(psi) / (2M)| / scale for
/// Psi = e^{i ell phi} e^{i k z} psi(r), with E the energy passed in. The
/// two sides are identical functions of E, so the result does not depend
/// on it for a correct separation.
double separation_residual(const PhysicalParams& p, const RadialProbe& probe, double r,
                           double phi, double z, double energy = 0.0,
                           OperatorForm form = OperatorForm::MetricLaplacian);

struct OracleComparisonRow {
  std::string source;  // "closed_form:plus", "truncation:root_0", ...
  double spectral = 0.0;
  double nearest_oracle = 0.0;
  double distance = 0.0;
};

struct OracleModeSection {
  GridMode mode = GridMode::Outer;
  OracleResult oracle;
  std::vector<double> exact;  // Flat only, when the flat spectrum is known
  std::vector<OracleComparisonRow> rows;
  std::string error;          // set when the oracle failed in this mode
};

/// Diagnostic juxtaposition of the n = 1 levels with the oracle spectra in
/// Core, Outer and Flat mode. No pass/fail.
struct OracleReport {
  std::vector<EnergyLevel> closed_form;
  double closed_form_discriminant = 0.0;
  std::vector<EnergyLevel> truncation;
  std::vector<OracleModeSection> sections;
};

OracleReport oracle_vs_closed_form_report(const PhysicalParams& p, int n_points = 4000,
                                          int n_eigs = 5);

}  // namespace heunspec
