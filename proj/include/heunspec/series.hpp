#pragma once

// Frobenius series solutions of the transformed radial equation around x = 0,
//
//   psi(x) = x^alpha exp(-omega x / 2) sum_i c_i x^i,   alpha = 1/4 + j/2,
//
// generated by a three-term recurrence
//
//   c_{i+2} = (d1(i) c_{i+1} + d2(i) c_i) / d3(i),   c_0 = 1.
//
// The series converges for 0 < x < 1 (regular singular point at x = 1).

#include <span>
#include <vector>

#include "heunspec/model.hpp"
#include "heunspec/radial.hpp"

namespace heunspec {

/// Which coefficient set drives the recurrence.
enum class RecurrenceVariant {
  /// d3 = (i + 2)(i + 2 + j) in both models; agrees with direct substitution.
  Corrected,
  /// Literature coefficients verbatim: d3 = (i + (3 + 2j)/2)(i + 2) in the
  /// oscillator model, (i + 2 + j)(i + 2) in the inverse-square model.
  AsPrinted,
  /// Mutation-test hook: Corrected with the sign of d2 flipped.
  SignTampered,
};

struct RecurrenceTriple {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  int index = 0;
};

RecurrenceTriple recurrence_triple(int i, const DerivedParams& d, SpectralParameter s,
                                   RecurrenceVariant variant = RecurrenceVariant::AsPrinted);

/// c_1 / c_0 from the closed seed formula.
double first_coefficient(const DerivedParams& d, SpectralParameter s);

/// Recurrence obtained by substituting the ansatz into the x-form equation
/// (multiplied through by x(x-1)) and collecting powers of x numerically:
///
///   t0 c_{i+2} + t1 c_{i+1} + t2 c_i + t3 c_{i-1} = 0.
///
/// t3 vanishes exactly when the Gaussian rate of the ansatz matches omega;
/// it is kept so a mismatch shows up instead of being assumed away. Valid
/// for i >= -1 (i = -1 gives the seed).
struct SubstitutionRecurrence {
  double t0 = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
};

SubstitutionRecurrence derive_recurrence_by_substitution(int i, const DerivedParams& d,
                                                         SpectralParameter s);

/// The substitution recurrence rescaled to (d1, d2, d3) form.
RecurrenceTriple substitution_triple(int i, const DerivedParams& d, SpectralParameter s);

struct SeriesSolution {
  std::vector<double> coeffs;
  double exponent_alpha = 0.5;
  double gauss_factor = 0.0;  // omega / 2
  SpectralParameter spectral;
  DerivedParams derived;
  /// A finite polynomial (valid for every x > 0) rather than a truncated
  /// infinite series.
  bool terminating = false;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  SeriesSolution scaled(double factor) const;
};

/// c_0 .. c_order. Throws InvalidParameter for order < 1 and DivergingSeries
/// when a coefficient exceeds 1e300 in magnitude.
SeriesSolution series_coefficients(const DerivedParams& d, SpectralParameter s, int order,
                                   RecurrenceVariant variant = RecurrenceVariant::Corrected);

/// psi and its analytic x-derivatives.
struct PsiValue {
  double psi = 0.0;
  double dpsi = 0.0;
  double d2psi = 0.0;
  /// Set for x >= 1 on a non-terminating series: past the convergence radius.
  bool outside_convergence = false;

  Jet jet() const { return {psi, dpsi, d2psi}; }
};

/// Throws DomainError for x <= 0.
PsiValue eval_psi_x(const SeriesSolution& sol, double x);

struct ResidualReport {
  std::vector<double> sample_points;
  std::vector<double> residuals;  // |L[psi](x)| / max(1, |psi(x)|)
  double max_residual = 0.0;
};

struct WavefunctionSample {
  double x = 0.0;
  double r = 0.0;  // beta sqrt(x)
  double psi = 0.0;
  double dpsi_dx = 0.0;
};

/// `samples` points x = xmax i / samples, i = 1 .. samples. A non-terminating
/// series needs xmax < 1 (DomainError otherwise).
std::vector<WavefunctionSample> sample_wavefunction(const SeriesSolution& sol, double xmax,
                                                    int samples);

/// Residual of the x-form equation on the truncated series. Every point must
/// lie in [1e-3, 1 - 1e-3], otherwise DomainError.
ResidualReport series_residual(const SeriesSolution& sol, std::span<const double> points);

/// |r-form(probe) - x-form(probe)/beta^2| / max(1, scale of the r-form).
/// Throws SingularPoint at r = beta.
double changeofvar_consistency(const PhysicalParams& p, SpectralParameter s, double r,
                               const RadialProbe& probe);

/// Parameter list of the confluent Heun function that the series represents
/// (metadata; the recurrence is the implementation).
struct HeunParameters {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double eta = 0.0;
};

HeunParameters confluent_heun_parameters(const DerivedParams& d, SpectralParameter s);

}  // namespace heunspec
