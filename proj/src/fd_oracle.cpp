#include "heunspec/fd_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Dense>

#include "heunspec/errors.hpp"
#include "heunspec/tridiagonal.hpp"

namespace heunspec {
namespace {

constexpr double kEndGap = 1e-6;
constexpr double kResidualLimit = 1e-6;

struct ModeGeometry {
  double b = 0.0;     // beta, or 0 in Flat mode
  double iota = 0.0;  // effective angular momentum seen by the radial equation
};

ModeGeometry geometry(const PhysicalParams& p, GridMode mode) {
  if (mode == GridMode::Flat) return {0.0, p.ell - p.flux};
  return {p.beta, derive_params(p).iota};
}

// Potential terms that do not involve r^2 - b^2.
double regular_potential(double r, const PhysicalParams& p) {
  const double mw = p.mass * p.omega0;
  return mw * mw * r * r + 2.0 * p.mass * p.gamma / (r * r);
}

double liouville_potential(double r, const PhysicalParams& p, const ModeGeometry& geo) {
  const double gap = r * r - geo.b * geo.b;
  return regular_potential(r, p) + geo.iota * geo.iota / gap -
         (r * r + 2.0 * geo.b * geo.b) / (4.0 * gap * gap);
}

double vector_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Relative residual of A psi = S B psi with A tridiagonal, B diagonal.
double pair_residual(const SymTridiagonal& a, const std::vector<double>& b,
                     const std::vector<double>& psi, double s) {
  const std::vector<double> apsi = a.apply(psi);
  std::vector<double> bpsi(psi.size()), diff(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    bpsi[i] = b[i] * psi[i];
    diff[i] = apsi[i] - s * bpsi[i];
  }
  const double scale = vector_norm(apsi) + std::abs(s) * vector_norm(bpsi);
  return scale == 0.0 ? 0.0 : vector_norm(diff) / scale;
}

// The weighted problem A psi = S diag(m) psi, solved through
// diag(m)^{-1/2} A diag(m)^{-1/2} u = S u.
struct WeightedProblem {
  SymTridiagonal a;
  std::vector<double> mass;
  std::vector<double> nodes;
  double r_lo = 0.0;
  double r_hi = 0.0;
};

WeightedProblem conservative_problem(const PhysicalParams& p, const GridSpec& g) {
  const ModeGeometry geo = geometry(p, g.mode);
  const double b = geo.b;
  const double b2 = b * b;
  const int n = g.n_points;

  double lo = g.r_min;
  double hi = g.r_max;
  const double h0 = (hi - lo) / n;
  switch (g.mode) {
    case GridMode::Flat:
      if (lo < 0.5 * h0) lo = 0.0;
      break;
    case GridMode::Outer:
      if (lo - b < 0.5 * h0) lo = b;
      break;
    case GridMode::Core:
      if (lo < 0.5 * h0) lo = 0.0;
      if (b - hi < 0.5 * h0) hi = b;
      break;
  }
  const double h = (hi - lo) / n;

  // rho, the antiderivative of rho, and the antiderivative of iota^2 rho/(r^2-b^2).
  auto rho = [&](double x) {
    switch (g.mode) {
      case GridMode::Flat: return x;
      case GridMode::Outer: return std::sqrt(std::max(x * x - b2, 0.0));
      case GridMode::Core: break;
    }
    return std::sqrt(std::max(b2 - x * x, 0.0));
  };
  auto mass_primitive = [&](double x) {
    if (g.mode == GridMode::Outer)
      return 0.5 * (x * rho(x) - b2 * std::acosh(std::max(x / b, 1.0)));
    return 0.5 * (x * rho(x) + b2 * std::asin(std::min(x / b, 1.0)));
  };
  auto iota_primitive = [&](double x) {
    const double i2 = geo.iota * geo.iota;
    if (g.mode == GridMode::Outer) return i2 * std::acosh(std::max(x / b, 1.0));
    return -i2 * std::asin(std::min(x / b, 1.0));
  };

  WeightedProblem w;
  w.r_lo = lo;
  w.r_hi = hi;
  w.mass.resize(n);
  w.nodes.resize(n);
  w.a.diag.assign(n, 0.0);
  w.a.off.assign(n - 1, 0.0);
  for (int i = 0; i < n; ++i) {
    const double f0 = lo + i * h;
    const double f1 = i + 1 == n ? hi : lo + (i + 1) * h;
    const double rc = lo + (i + 0.5) * h;
    w.nodes[i] = rc;
    double m, iota_term;
    if (g.mode == GridMode::Flat) {
      m = h * rc;  // exact for rho = r
      iota_term = geo.iota * geo.iota / (rc * rc) * m;
    } else {
      m = mass_primitive(f1) - mass_primitive(f0);
      iota_term = iota_primitive(f1) - iota_primitive(f0);
    }
    w.mass[i] = m;
    // Dirichlet ends through a mirrored ghost cell: the end face sees half a
    // cell, doubling its weight. The weight vanishes where rho does.
    const double w_lo = (i == 0 ? 2.0 : 1.0) * rho(f0) / h;
    const double w_hi = (i + 1 == n ? 2.0 : 1.0) * rho(f1) / h;
    w.a.diag[i] = w_lo + w_hi + regular_potential(rc, p) * m + iota_term;
    if (i + 1 < n) w.a.off[i] = -rho(f1) / h;
  }
  return w;
}

WeightedProblem liouville_problem(const PhysicalParams& p, const GridSpec& g) {
  const ModeGeometry geo = geometry(p, g.mode);
  const int n = g.n_points;
  const double h = (g.r_max - g.r_min) / (n + 1);
  WeightedProblem w;
  w.r_lo = g.r_min;
  w.r_hi = g.r_max;
  w.mass.resize(n);
  w.nodes.resize(n);
  w.a.diag.resize(n);
  w.a.off.resize(n - 1);
  // T u = S u with psi = u / q, q = |r^2-b^2|^{1/4}, posed as
  // (Q T Q) psi = S Q^2 psi.
  std::vector<double> q(n);
  for (int i = 0; i < n; ++i) {
    const double r = g.r_min + (i + 1) * h;
    w.nodes[i] = r;
    q[i] = std::pow(std::abs(r * r - geo.b * geo.b), 0.25);
    w.mass[i] = q[i] * q[i];
  }
  for (int i = 0; i < n; ++i) {
    w.a.diag[i] = q[i] * q[i] * (2.0 / (h * h) + liouville_potential(w.nodes[i], p, geo));
    if (i + 1 < n) w.a.off[i] = -q[i] * q[i + 1] / (h * h);
  }
  return w;
}

}  // namespace

std::string_view to_string(GridMode mode) {
  switch (mode) {
    case GridMode::Outer: return "outer";
    case GridMode::Core: return "core";
    case GridMode::Flat: break;
  }
  return "flat";
}

GridMode parse_grid_mode(std::string_view name) {
  if (name == "outer") return GridMode::Outer;
  if (name == "core") return GridMode::Core;
  if (name == "flat") return GridMode::Flat;
  throw InvalidParameter("unknown grid mode '" + std::string(name) + "'");
}

void validate(const GridSpec& g, const PhysicalParams& p) {
  if (g.n_points < 100) throw InvalidParameter("grid needs n_points >= 100");
  if (!(g.r_min > 0.0) || !std::isfinite(g.r_max) || !(g.r_max > g.r_min))
    throw InvalidParameter("grid needs 0 < r_min < r_max");
  if (g.mode == GridMode::Outer && !(g.r_min > p.beta))
    throw InvalidParameter("outer grid needs r_min > beta");
  if (g.mode == GridMode::Core && !(g.r_max < p.beta))
    throw InvalidParameter("core grid needs r_max < beta");
}

GridSpec default_grid(const PhysicalParams& p, GridMode mode, int n_points) {
  GridSpec g;
  g.n_points = n_points;
  g.mode = mode;
  const double reach =
      p.omega0 > 0.0 ? std::max(10.0, 6.0 / std::sqrt(p.mass * p.omega0)) : 40.0;
  switch (mode) {
    case GridMode::Flat:
      g.r_min = kEndGap;
      g.r_max = reach;
      break;
    case GridMode::Outer:
      g.r_min = p.beta + kEndGap;
      g.r_max = reach;
      break;
    case GridMode::Core:
      g.r_min = kEndGap;
      g.r_max = p.beta - kEndGap;
      break;
  }
  return g;
}

double effective_potential(double r, const PhysicalParams& p) {
  if (!(r > 0.0)) throw DomainError("effective_potential: r must be > 0");
  if (r == p.beta) throw SingularPoint("effective_potential: r = beta");
  return liouville_potential(r, p, geometry(p, GridMode::Outer));
}

OracleResult oracle_eigenvalues(const PhysicalParams& p, const GridSpec& g, int n_eigs,
                                Discretization scheme) {
  validate(p);
  validate(g, p);
  if (n_eigs < 1 || n_eigs > g.n_points)
    throw InvalidParameter("oracle_eigenvalues: n_eigs out of range");

  const WeightedProblem w =
      scheme == Discretization::Conservative ? conservative_problem(p, g) : liouville_problem(p, g);
  const int n = g.n_points;
  std::vector<double> inv_sqrt_mass(n);
  for (int i = 0; i < n; ++i) inv_sqrt_mass[i] = 1.0 / std::sqrt(w.mass[i]);
  SymTridiagonal t;
  t.diag.resize(n);
  t.off.resize(n - 1);
  for (int i = 0; i < n; ++i) {
    t.diag[i] = w.a.diag[i] * inv_sqrt_mass[i] * inv_sqrt_mass[i];
    if (i + 1 < n) t.off[i] = w.a.off[i] * inv_sqrt_mass[i] * inv_sqrt_mass[i + 1];
  }

  OracleResult out;
  out.grid = g;
  out.r_lo = w.r_lo;
  out.r_hi = w.r_hi;
  out.nodes = w.nodes;
  out.eigenvalues = tridiagonal_eigenvalues(t, 0, n_eigs);
  for (double s : out.eigenvalues) {
    std::vector<double> psi = tridiagonal_eigenvector(t, s);
    for (int i = 0; i < n; ++i) psi[i] *= inv_sqrt_mass[i];
    const double res = pair_residual(w.a, w.mass, psi, s);
    if (!(res <= kResidualLimit))
      throw GridTooCoarse("eigenpair residual " + std::to_string(res) + " exceeds 1e-6 at S = " +
                          std::to_string(s));
    out.residual_norms.push_back(res);
    out.eigenvectors.push_back(std::move(psi));
  }
  return out;
}

double flat_exact_spectrum(const PhysicalParams& p, int n_r) {
  const double a = p.ell - p.flux;
  const double s = std::sqrt(a * a + 2.0 * p.mass * p.gamma);
  return 2.0 * p.mass * p.omega0 * (2.0 * n_r + 1.0 + s);
}

double separation_residual(const PhysicalParams& p, const RadialProbe& probe, double r,
                           double phi, double z, double energy, OperatorForm form) {
  using cd = std::complex<double>;
  validate(p);
  if (!(r > 0.0)) throw DomainError("separation_residual: r must be > 0");
  if (r == p.beta) throw SingularPoint("separation_residual: r = beta");

  const Jet psi = probe(r);
  const cd I(0.0, 1.0);
  const double a = p.ell - p.flux;  // D_phi acts as i(ell - flux) on the phase
  const double b = p.beta;
  const double gap = r * r - b * b;

  cd lap;  // Laplacian of Psi divided by the phase
  if (form == OperatorForm::MetricLaplacian) {
    Eigen::Matrix3d g;
    g << 1.0, 0.0, 0.0, 0.0, r * r, b, 0.0, b, 1.0;
    Eigen::Matrix3d dg = Eigen::Matrix3d::Zero();
    dg(1, 1) = 2.0 * r;
    const Eigen::Matrix3d ginv = g.inverse();
    const Eigen::Matrix3d dginv = -ginv * dg * ginv;
    const double dlog_sqrt_det = 0.5 * (ginv * dg).trace();  // Jacobi's formula

    // D_j Psi / phase and its r-derivative, j = (r, phi, z).
    const std::array<cd, 3> c{cd(psi.df), I * a * psi.f, I * p.k * psi.f};
    const std::array<cd, 3> dc{cd(psi.d2f), I * a * psi.df, I * p.k * psi.df};
    const std::array<cd, 3> kappa{cd(0.0), I * a, I * p.k};
    for (int j = 0; j < 3; ++j) {
      lap += (dginv(0, j) + ginv(0, j) * dlog_sqrt_det) * c[j] + ginv(0, j) * dc[j];
      for (int i = 1; i < 3; ++i) lap += ginv(i, j) * kappa[i] * c[j];
    }
  } else {
    const cd angular = I * a - b * I * p.k;
    lap = psi.d2f + r / gap * psi.df + angular * angular * psi.f / gap;
  }

  const double two_m = 2.0 * p.mass;
  const cd rotation = I * p.Omega * (I * a - b * I * p.k) * psi.f;
  double potential = 0.5 * p.mass * p.omega0 * p.omega0 * r * r + p.gamma / (r * r);
  if (p.model == Model::OscillatorInverseSquare) potential += p.delta;
  const cd h_psi = -lap / two_m + rotation + potential * psi.f;

  const OdeTerms radial = radial_lhs(p, energy_to_spectral(energy, p), r, psi);
  const cd diff = h_psi - energy * psi.f + radial.value / two_m;
  const double scale = std::abs(lap) / two_m + std::abs(rotation) +
                       std::abs(potential * psi.f) + std::abs(energy * psi.f) +
                       radial.scale / two_m;
  const cd phase = std::exp(I * (p.ell * phi + p.k * z));
  return scale == 0.0 ? 0.0 : std::abs(diff * phase) / scale;
}

OracleReport oracle_vs_closed_form_report(const PhysicalParams& p, int n_points, int n_eigs) {
  validate(p);
  OracleReport report;
  for (Branch branch : {Branch::Minus, Branch::Plus}) {
    try {
      report.closed_form.push_back(ground_state_closed_form(p, branch));
      report.closed_form_discriminant = report.closed_form.back().discriminant;
    } catch (const NegativeDiscriminant& e) {
      report.closed_form_discriminant = e.value();
    }
  }
  report.truncation = truncation_solve(p, 1);

  for (GridMode mode : {GridMode::Core, GridMode::Outer, GridMode::Flat}) {
    OracleModeSection section;
    section.mode = mode;
    try {
      section.oracle = oracle_eigenvalues(p, default_grid(p, mode, n_points), n_eigs);
    } catch (const Error& e) {
      section.error = e.what();
    }
    if (mode == GridMode::Flat && p.omega0 > 0.0)
      for (int k = 0; k < n_eigs; ++k) section.exact.push_back(flat_exact_spectrum(p, k));

    auto add_row = [&](const std::string& source, double spectral) {
      OracleComparisonRow row;
      row.source = source;
      row.spectral = spectral;
      row.distance = std::numeric_limits<double>::infinity();
      for (double ev : section.oracle.eigenvalues) {
        if (std::abs(ev - spectral) < row.distance) {
          row.distance = std::abs(ev - spectral);
          row.nearest_oracle = ev;
        }
      }
      if (section.oracle.eigenvalues.empty()) row.nearest_oracle = std::nan("");
      section.rows.push_back(row);
    };
    for (const EnergyLevel& level : report.closed_form)
      add_row("closed_form:" + branch_label(level), level.spectral);
    for (const EnergyLevel& level : report.truncation)
      add_row("truncation:" + branch_label(level), level.spectral);
    report.sections.push_back(std::move(section));
  }
  return report;
}

}  // namespace heunspec
