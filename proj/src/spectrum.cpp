#include "heunspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "heunspec/errors.hpp"
#include "heunspec/roots.hpp"

namespace heunspec {
namespace {

struct AffinePair {
  Polynomial d1;
  Polynomial d2;
};

// d1(i), d2(i) as affine functions of the spectral parameter S.
AffinePair affine_coefficients(int i, const DerivedParams& d, Model model) {
  const double x = static_cast<double>(i);
  const double j = d.j;
  const double iota2 = d.iota * d.iota;
  const double b2 = d.beta * d.beta;
  if (model == Model::OscillatorInverseSquare) {
    const double w = d.omega;
    const double d1_0 =
        (x + w + 1.5 + j) * (x + 1.0) + (-iota2 + 0.5 + j + 2.0 * w * (1.0 + j)) / 4.0;
    const double d2_0 = -w * x - w * (3.0 + 2.0 * j) / 4.0;
    return {Polynomial::affine(d1_0, -b2 / 4.0), Polynomial::affine(d2_0, b2 / 4.0)};
  }
  const double d1_0 = (x + j + 1.5) * (x + 1.0) - (iota2 - 0.5 - j) / 4.0;
  return {Polynomial::affine(d1_0, -b2 / 4.0), Polynomial::affine(0.0, b2 / 4.0)};
}

Polynomial seed_polynomial(const DerivedParams& d, Model model) {
  const double j = d.j;
  const double iota2 = d.iota * d.iota;
  const double den = 4.0 * (1.0 + j);
  const double slope = -d.beta * d.beta / den;
  if (model == Model::OscillatorInverseSquare)
    return Polynomial::affine((2.0 * d.omega * (1.0 + j) - iota2 + 0.5 + j) / den, slope);
  return Polynomial::affine((j + 0.5 - iota2) / den, slope);
}

double termination_defect(const SeriesSolution& sol, int n) {
  double scale = 0.0;
  for (int i = 0; i <= n + 1; ++i) scale = std::max(scale, std::abs(sol.coeffs[i]));
  return std::abs(sol.coeffs[n + 2]) / scale;
}

double relative_difference(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

struct ClosedFormRaw {
  double radicand = 0.0;
  double spectral_minus = 0.0;
  double spectral_plus = 0.0;
  double c1_minus = 0.0;  // c1 paired with the Minus branch (upper sign of the printed "-/+")
  double c1_plus = 0.0;
};

// The closed forms are written in the derived symbols (iota, omega, j); the
// 32 M gamma term is kept literally rather than as 16 (j^2 - 1/4).
ClosedFormRaw closed_form_raw(const PhysicalParams& p) {
  const DerivedParams d = derive_params(p);
  const double j = d.j;
  const double iota2 = d.iota * d.iota;
  const double b2 = d.beta * d.beta;
  const double den = 4.0 * (1.0 + j);
  ClosedFormRaw raw;
  if (p.model == Model::OscillatorInverseSquare) {
    const double w = d.omega;
    raw.radicand = 16.0 * iota2 * (1.0 + j) + 16.0 * w * (2.0 + j) + 14.0 * w * w - 44.0 * j -
                   32.0 * p.mass * p.gamma - 8.0;
    if (raw.radicand < 0.0) return raw;
    const double root = std::sqrt(raw.radicand);
    const double centre = 3.0 - 2.0 * iota2 + 4.0 * w * (2.0 + j) + 2.0 * j;
    raw.spectral_plus = (centre + root) / b2;
    raw.spectral_minus = (centre - root) / b2;
    const double c1_centre = iota2 - 2.0 * w * (j + 3.0) - j - 2.5;
    raw.c1_plus = (c1_centre - root) / den;
    raw.c1_minus = (c1_centre + root) / den;
  } else {
    raw.radicand = iota2 * (j + 0.25) - j * (j + 1.5) - 0.25;
    if (raw.radicand < 0.0) return raw;
    const double root = std::sqrt(raw.radicand);
    const double centre = j + 1.5 - iota2;
    raw.spectral_plus = (centre + root) / b2;
    raw.spectral_minus = (centre - root) / b2;
    raw.c1_plus = (-1.0 - root) / den;
    raw.c1_minus = (-1.0 + root) / den;
  }
  return raw;
}

}  // namespace

LambdaPolynomialTable lambda_polynomials(const DerivedParams& d, Model model, int n_max,
                                         RecurrenceVariant variant) {
  if (n_max < 1) throw InvalidParameter("lambda_polynomials: n_max must be >= 1");
  LambdaPolynomialTable table;
  table.model = model;
  table.derived = d;
  table.polys.reserve(n_max + 1);
  table.polys.push_back(Polynomial::constant(1.0));
  table.polys.push_back(seed_polynomial(d, model));
  for (int i = 0; i + 2 <= n_max; ++i) {
    const AffinePair a = affine_coefficients(i, d, model);
    RecurrenceTriple t = recurrence_triple(i, d, {0.0, model}, variant);
    Polynomial d2 = a.d2;
    if (variant == RecurrenceVariant::SignTampered) d2 = -1.0 * d2;
    table.polys.push_back((1.0 / t.d3) * (a.d1 * table.polys[i + 1] + d2 * table.polys[i]));
  }
  return table;
}

std::string branch_label(const EnergyLevel& level) {
  switch (level.branch) {
    case Branch::Plus: return "plus";
    case Branch::Minus: return "minus";
    case Branch::Root: break;
  }
  return "root_" + std::to_string(level.root_index);
}

std::vector<EnergyLevel> truncation_solve(const PhysicalParams& p, int n,
                                          RecurrenceVariant variant) {
  if (n < 1) throw InvalidParameter("truncation_solve: n must be >= 1");
  validate(p);
  const DerivedParams d = derive_params(p);
  const LambdaPolynomialTable table = lambda_polynomials(d, p.model, n + 1, variant);
  const Polynomial& poly = table.polys[n + 1];
  const int degree = poly.degree();
  if (degree < 1) return {};
  const Polynomial monic_derivative = (1.0 / poly[degree]) * poly.derivative();

  const std::vector<double> roots = real_roots(poly, 1e-10);
  std::vector<EnergyLevel> levels;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const SpectralParameter s{roots[k], p.model};
    const SeriesSolution sol = series_coefficients(d, s, n + 2, variant);
    EnergyLevel level;
    level.n = n;
    level.ell = p.ell;
    level.root_index = static_cast<int>(k);
    if (n == 1 && roots.size() == 2)
      level.branch = k == 0 ? Branch::Minus : Branch::Plus;
    else
      level.branch = Branch::Root;
    level.spectral = roots[k];
    level.energy = spectral_to_energy(s, p);
    const double slope = monic_derivative(roots[k]);
    level.discriminant = slope * slope;
    level.termination_defect = termination_defect(sol, n);
    level.c1_over_c0 = sol.coeffs[1];
    level.truncation_residual = normalized_residual(poly, roots[k]);
    levels.push_back(level);
  }
  return levels;
}

EnergyLevel ground_state_closed_form(const PhysicalParams& p, Branch branch) {
  if (branch == Branch::Root)
    throw InvalidParameter("closed form exists only for the plus and minus branches");
  validate(p);
  const ClosedFormRaw raw = closed_form_raw(p);
  if (raw.radicand < 0.0) throw NegativeDiscriminant(raw.radicand);

  const bool plus = branch == Branch::Plus;
  const SpectralParameter s{plus ? raw.spectral_plus : raw.spectral_minus, p.model};
  const DerivedParams d = derive_params(p);
  EnergyLevel level;
  level.n = 1;
  level.ell = p.ell;
  level.branch = branch;
  level.spectral = s.value;
  level.energy = spectral_to_energy(s, p);
  level.discriminant = raw.radicand;
  level.c1_over_c0 = plus ? raw.c1_plus : raw.c1_minus;
  const SeriesSolution sol = series_coefficients(d, s, 3);
  level.termination_defect = termination_defect(sol, 1);
  const LambdaPolynomialTable table = lambda_polynomials(d, p.model, 2);
  level.truncation_residual = normalized_residual(table.polys[2], s.value);
  return level;
}

std::string_view to_string(AuditLabel label) {
  return label == AuditLabel::Agree ? "AGREE" : "DISCREPANT";
}

ClosedFormComparison compare_closed_form_vs_truncation(const PhysicalParams& p) {
  validate(p);
  ClosedFormComparison cmp;
  const ClosedFormRaw raw = closed_form_raw(p);
  cmp.closed_form_discriminant = raw.radicand;
  if (raw.radicand >= 0.0) cmp.closed_form = {raw.spectral_minus, raw.spectral_plus};

  const DerivedParams d = derive_params(p);
  const Polynomial c2 = lambda_polynomials(d, p.model, 2).polys[2];
  cmp.quadratic = {c2[0], c2[1], c2[2]};
  for (const EnergyLevel& level : truncation_solve(p, 1)) {
    cmp.truncation.push_back(level.spectral);
    cmp.max_root_residual = std::max(cmp.max_root_residual, level.truncation_residual);
  }
  cmp.same_emptiness = cmp.closed_form.empty() == cmp.truncation.empty();

  // Both lists are ascending, so the order-preserving pairing is the one that
  // minimises the total distance.
  const std::size_t pairs = std::min(cmp.closed_form.size(), cmp.truncation.size());
  bool agree = cmp.closed_form.size() == cmp.truncation.size();
  for (std::size_t k = 0; k < pairs; ++k) {
    const double rel = relative_difference(cmp.closed_form[k], cmp.truncation[k]);
    cmp.pairing.push_back({static_cast<int>(k), static_cast<int>(k), rel});
    if (!(rel <= kAgreeTolerance)) agree = false;
  }
  cmp.label = agree ? AuditLabel::Agree : AuditLabel::Discrepant;
  return cmp;
}

PeriodicityCheck ab_periodicity_check(const PhysicalParams& p, int nu,
                                      const LevelFunction& level_fn) {
  PhysicalParams shifted_flux = p;
  shifted_flux.flux += nu;
  PhysicalParams shifted_ell = p;
  shifted_ell.ell -= nu;
  PeriodicityCheck check;
  check.nu = nu;
  try {
    check.lhs_energy = level_fn(shifted_flux);
    check.rhs_energy = level_fn(shifted_ell);
  } catch (const NegativeDiscriminant& e) {
    throw LevelMissing(std::string("periodicity check: ") + e.what());
  }
  check.abs_diff = std::abs(check.lhs_energy - check.rhs_energy);
  return check;
}

WavefunctionResult ground_state_wavefunction(const PhysicalParams& p, Branch branch) {
  const EnergyLevel level = ground_state_closed_form(p, branch);
  const DerivedParams d = derive_params(p);
  const SpectralParameter s{level.spectral, p.model};

  WavefunctionResult out;
  out.solution.coeffs = {1.0, level.c1_over_c0};
  out.solution.exponent_alpha = 0.25 + 0.5 * d.j;
  out.solution.gauss_factor = 0.5 * d.omega;
  out.solution.spectral = s;
  out.solution.derived = d;
  out.solution.terminating = true;
  out.seed_c1 = first_coefficient(d, s);
  const double diff = std::abs(out.seed_c1 - level.c1_over_c0);
  out.label = diff <= kAgreeTolerance * std::max(1.0, std::abs(out.seed_c1)) ? AuditLabel::Agree
                                                                              : AuditLabel::Discrepant;
  return out;
}

namespace {

struct JointResidual {
  double f1 = 0.0;
  double f2 = 0.0;
  double scale = 1.0;
};

JointResidual joint_residual(DerivedParams d, int n, double spectral, double omega) {
  d.omega = omega;
  const SeriesSolution sol =
      series_coefficients(d, {spectral, Model::OscillatorInverseSquare}, n + 2);
  double scale = 0.0;
  for (double c : sol.coeffs) scale = std::max(scale, std::abs(c));
  return {sol.coeffs[n + 1], sol.coeffs[n + 2], scale};
}

double implied_omega0(const PhysicalParams& p, double omega) {
  const double per_unit =
      p.omega_convention == OmegaConvention::Scaled ? p.mass * p.beta * p.beta : p.mass * p.beta;
  return omega / per_unit;
}

}  // namespace

JointTermination joint_termination(const PhysicalParams& p, int n, double spectral_guess,
                                   double omega_guess) {
  if (p.model != Model::OscillatorInverseSquare)
    throw ModelMismatch("joint termination needs the oscillator model");
  if (n < 1) throw InvalidParameter("joint_termination: n must be >= 1");
  const DerivedParams d = derive_params(p);

  Eigen::Vector2d z(spectral_guess, omega_guess);
  JointTermination out;
  for (int it = 1; it <= 100; ++it) {
    out.iterations = it;
    const JointResidual r = joint_residual(d, n, z[0], z[1]);
    out.residual = std::max(std::abs(r.f1), std::abs(r.f2)) / r.scale;
    if (out.residual <= 1e-13) {
      out.converged = true;
      break;
    }
    Eigen::Matrix2d jac;
    for (int col = 0; col < 2; ++col) {
      const double h = 1e-6 * std::max(1.0, std::abs(z[col]));
      Eigen::Vector2d up = z, down = z;
      up[col] += h;
      down[col] -= h;
      const JointResidual ru = joint_residual(d, n, up[0], up[1]);
      const JointResidual rd = joint_residual(d, n, down[0], down[1]);
      jac(0, col) = (ru.f1 - rd.f1) / (2.0 * h);
      jac(1, col) = (ru.f2 - rd.f2) / (2.0 * h);
    }
    const Eigen::Vector2d step = jac.fullPivLu().solve(Eigen::Vector2d(r.f1, r.f2));
    if (!step.allFinite()) break;
    z -= step;
    if (step.norm() <= 1e-15 * std::max(1.0, z.norm())) {
      const JointResidual last = joint_residual(d, n, z[0], z[1]);
      out.residual = std::max(std::abs(last.f1), std::abs(last.f2)) / last.scale;
      out.converged = out.residual <= 1e-11;
      break;
    }
  }
  out.spectral = z[0];
  out.omega = z[1];
  out.omega0 = implied_omega0(p, z[1]);
  return out;
}

std::vector<JointTermination> joint_termination_scan(const PhysicalParams& p, int n,
                                                     double omega_lo, double omega_hi,
                                                     int steps) {
  if (p.model != Model::OscillatorInverseSquare)
    throw ModelMismatch("joint termination needs the oscillator model");
  if (!(omega_hi > omega_lo) || steps < 2)
    throw InvalidParameter("joint_termination_scan: empty omega range");
  DerivedParams d = derive_params(p);

  struct Sample {
    double omega;
    std::vector<double> roots;
    std::vector<double> defect;  // signed c_{n+2} / scale along each root branch
  };
  std::vector<Sample> samples;
  for (int k = 0; k <= steps; ++k) {
    Sample s;
    s.omega = omega_lo + (omega_hi - omega_lo) * k / steps;
    d.omega = s.omega;
    const Polynomial poly = lambda_polynomials(d, p.model, n + 1).polys[n + 1];
    s.roots = real_roots(poly, 1e-10);
    for (double root : s.roots) {
      const JointResidual r = joint_residual(d, n, root, s.omega);
      s.defect.push_back(r.f2 / r.scale);
    }
    samples.push_back(std::move(s));
  }

  std::vector<JointTermination> found;
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    const Sample& a = samples[k];
    const Sample& b = samples[k + 1];
    if (a.roots.size() != b.roots.size()) continue;
    for (std::size_t r = 0; r < a.roots.size(); ++r) {
      if (a.defect[r] * b.defect[r] > 0.0) continue;
      const JointTermination sol = joint_termination(
          p, n, 0.5 * (a.roots[r] + b.roots[r]), 0.5 * (a.omega + b.omega));
      if (!sol.converged) continue;
      const bool duplicate = std::any_of(found.begin(), found.end(), [&](const auto& f) {
        return relative_difference(f.spectral, sol.spectral) < 1e-9 &&
               relative_difference(f.omega, sol.omega) < 1e-9;
      });
      if (!duplicate) found.push_back(sol);
    }
  }
  std::sort(found.begin(), found.end(),
            [](const auto& x, const auto& y) { return x.omega < y.omega; });
  return found;
}

}  // namespace heunspec
