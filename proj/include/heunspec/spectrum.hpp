#pragma once

// Quantization of the series: polynomial truncation of the Frobenius
// coefficients, the closed-form n = 1 levels, and the consistency audits
// between the two.

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "heunspec/model.hpp"
#include "heunspec/polynomial.hpp"
#include "heunspec/series.hpp"

namespace heunspec {

/// Entry i holds c_i as a polynomial in the spectral parameter (degree i).
struct LambdaPolynomialTable {
  std::vector<Polynomial> polys;
  Model model = Model::OscillatorInverseSquare;
  DerivedParams derived;
};

LambdaPolynomialTable lambda_polynomials(const DerivedParams& d, Model model, int n_max,
                                         RecurrenceVariant variant = RecurrenceVariant::Corrected);

/// Plus/Minus follow the sign in front of the square root of the closed-form
/// n = 1 levels (for truncation roots with n = 1: larger/smaller root).
/// Roots of higher truncation polynomials are numbered instead.
enum class Branch { Plus, Minus, Root };

struct EnergyLevel {
  int n = 1;
  int ell = 0;
  Branch branch = Branch::Plus;
  int root_index = 0;  // position among ascending roots, for Branch::Root
  double energy = 0.0;
  double spectral = 0.0;
  /// Closed form: the radicand. Truncation: P'(S)^2 of the monic truncation
  /// polynomial, which for n = 1 is the quadratic's b^2 - 4ac.
  double discriminant = 0.0;
  /// |c_{n+2}| / max_{i <= n+1} |c_i| at the level's spectral value.
  double termination_defect = 0.0;
  double c1_over_c0 = 0.0;
  /// Normalized |c_{n+1}(spectral)|; zero up to rounding for truncation roots.
  double truncation_residual = 0.0;
};

std::string branch_label(const EnergyLevel& level);

/// Every real root of c_{n+1}(S) = 0 as an energy level, ascending. An empty
/// result means no real level, not a failure.
std::vector<EnergyLevel> truncation_solve(const PhysicalParams& p, int n,
                                          RecurrenceVariant variant = RecurrenceVariant::Corrected);

/// Literature closed form for the n = 1 level of either model. Throws
/// NegativeDiscriminant when the radicand is negative; Branch::Root is
/// rejected with InvalidParameter.
EnergyLevel ground_state_closed_form(const PhysicalParams& p, Branch branch);

enum class AuditLabel { Agree, Discrepant };
std::string_view to_string(AuditLabel label);

struct ClosedFormComparison {
  /// Closed-form spectral values, [minus, plus]; empty when the radicand is
  /// negative.
  std::vector<double> closed_form;
  double closed_form_discriminant = 0.0;
  std::vector<double> truncation;  // ascending roots of c_2
  /// c_2(S) = q0 + q1 S + q2 S^2.
  std::array<double, 3> quadratic{};

  struct Pair {
    int closed_index = 0;
    int truncation_index = 0;
    double relative_difference = 0.0;
  };
  std::vector<Pair> pairing;

  AuditLabel label = AuditLabel::Discrepant;
  /// Both paths agree on whether real levels exist.
  bool same_emptiness = false;
  double max_root_residual = 0.0;
};

inline constexpr double kAgreeTolerance = 1e-8;

ClosedFormComparison compare_closed_form_vs_truncation(const PhysicalParams& p);

struct PeriodicityCheck {
  int nu = 0;
  double lhs_energy = 0.0;
  double rhs_energy = 0.0;
  double abs_diff = 0.0;
};

using LevelFunction = std::function<double(const PhysicalParams&)>;

/// Compares E(ell, flux + nu) with E(ell - nu, flux). Throws LevelMissing when
/// either side has no level.
PeriodicityCheck ab_periodicity_check(const PhysicalParams& p, int nu,
                                      const LevelFunction& level_fn);

struct WavefunctionResult {
  SeriesSolution solution;  // terminating: c_0 = 1, c_1 from the closed form
  double seed_c1 = 0.0;     // c_1 from the series seed at the same spectral value
  AuditLabel label = AuditLabel::Discrepant;
};

WavefunctionResult ground_state_wavefunction(const PhysicalParams& p, Branch branch);

/// Solution of c_{n+1} = c_{n+2} = 0 for (spectral, omega) jointly: a genuine
/// polynomial (Heun-polynomial) state, which also fixes the oscillator
/// frequency. Oscillator model only.
struct JointTermination {
  double spectral = 0.0;
  double omega = 0.0;
  double omega0 = 0.0;  // frequency implied by omega under the convention
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;  // max(|c_{n+1}|, |c_{n+2}|) / max_i |c_i|
};

JointTermination joint_termination(const PhysicalParams& p, int n, double spectral_guess,
                                   double omega_guess);

/// Seeds joint_termination from sign changes of c_{n+2} along the branches of
/// c_{n+1} = 0 on an omega grid; returns the distinct converged solutions.
std::vector<JointTermination> joint_termination_scan(const PhysicalParams& p, int n,
                                                     double omega_lo, double omega_hi,
                                                     int steps = 400);

}  // namespace heunspec
