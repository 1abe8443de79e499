#include "heunspec/series.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <string>

#include "heunspec/errors.hpp"
#include "heunspec/polynomial.hpp"

namespace heunspec {
namespace {

double scaled_spectral(const DerivedParams& d, SpectralParameter s) {
  return s.value * d.beta * d.beta;
}

}  // namespace

RecurrenceTriple recurrence_triple(int i, const DerivedParams& d, SpectralParameter s,
                                   RecurrenceVariant variant) {
  if (i < 0) throw InvalidParameter("recurrence index must be >= 0");
  const double x = static_cast<double>(i);
  const double sb2 = scaled_spectral(d, s);
  const double j = d.j;
  const double iota2 = d.iota * d.iota;

  RecurrenceTriple t;
  t.index = i;
  if (s.model == Model::OscillatorInverseSquare) {
    const double w = d.omega;
    t.d1 = (x + w + 1.5 + j) * (x + 1.0) - (iota2 + sb2 - 0.5 - j - 2.0 * w * (1.0 + j)) / 4.0;
    t.d2 = -w * x + (sb2 - w * (3.0 + 2.0 * j)) / 4.0;
    t.d3 = variant == RecurrenceVariant::AsPrinted ? (x + (3.0 + 2.0 * j) / 2.0) * (x + 2.0)
                                                   : (x + 2.0 + j) * (x + 2.0);
  } else {
    t.d1 = (x + j + 1.5) * (x + 1.0) - (sb2 + iota2 - 0.5 - j) / 4.0;
    t.d2 = sb2 / 4.0;
    t.d3 = (x + 2.0 + j) * (x + 2.0);
  }
  if (variant == RecurrenceVariant::SignTampered) t.d2 = -t.d2;
  return t;
}

double first_coefficient(const DerivedParams& d, SpectralParameter s) {
  const double sb2 = scaled_spectral(d, s);
  const double j = d.j;
  const double iota2 = d.iota * d.iota;
  if (s.model == Model::OscillatorInverseSquare)
    return (2.0 * d.omega * (1.0 + j) - iota2 - sb2 + 0.5 + j) / (4.0 * (1.0 + j));
  return (j + 0.5 - sb2 - iota2) / (4.0 * (1.0 + j));
}

SubstitutionRecurrence derive_recurrence_by_substitution(int i, const DerivedParams& d,
                                                         SpectralParameter s) {
  if (i < -1) throw InvalidParameter("substitution index must be >= -1");
  const double alpha = 0.25 + 0.5 * d.j;
  const double g = 0.5 * d.omega;  // Gaussian rate of the ansatz
  const double sb2 = scaled_spectral(d, s);
  const double two_m_gamma = d.j * d.j - 0.25;

  // psi = x^alpha e^{-g x} G. With q = x (alpha/x - g) = alpha - g x, the
  // equation times x(x-1) reads A G'' + B G' + C G = 0 with polynomial A, B, C.
  const Polynomial x({0.0, 1.0});
  const Polynomial xm1({-1.0, 1.0});
  const Polynomial q({alpha, -g});
  const Polynomial four_x_minus_2({-2.0, 4.0});

  const Polynomial a = 4.0 * (x * x * xm1);
  const Polynomial b = 8.0 * (x * xm1 * q) + four_x_minus_2 * x;
  const Polynomial c = 4.0 * (xm1 * (q * q + Polynomial::constant(-alpha))) +
                       four_x_minus_2 * q + sb2 * (x * xm1) +
                       (-d.omega * d.omega) * (x * x * xm1) + (-two_m_gamma) * xm1 +
                       (-d.iota * d.iota) * x;

  // Coefficient of x^{i+2} in sum_k c_k (a k(k-1) x^{k-2} + b k x^{k-1} + c x^k).
  const int m = i + 2;
  std::array<double, 4> t{};
  auto collect = [&](const Polynomial& poly, int shift, auto factor) {
    for (std::size_t p = 0; p < poly.coeffs().size(); ++p) {
      const int off = static_cast<int>(p) - shift;
      if (off < 0 || off > 3) continue;
      t[off] += poly[p] * factor(static_cast<double>(m - off));
    }
  };
  collect(a, 2, [](double k) { return k * (k - 1.0); });
  collect(b, 1, [](double k) { return k; });
  collect(c, 0, [](double) { return 1.0; });
  return {t[0], t[1], t[2], t[3]};
}

RecurrenceTriple substitution_triple(int i, const DerivedParams& d, SpectralParameter s) {
  const auto sub = derive_recurrence_by_substitution(i, d, s);
  return {sub.t1 / 4.0, sub.t2 / 4.0, -sub.t0 / 4.0, i};
}

SeriesSolution SeriesSolution::scaled(double factor) const {
  SeriesSolution out = *this;
  for (double& c : out.coeffs) c *= factor;
  return out;
}

SeriesSolution series_coefficients(const DerivedParams& d, SpectralParameter s, int order,
                                   RecurrenceVariant variant) {
  if (order < 1) throw InvalidParameter("series order must be >= 1");
  SeriesSolution sol;
  sol.exponent_alpha = 0.25 + 0.5 * d.j;
  sol.gauss_factor = 0.5 * d.omega;
  sol.spectral = s;
  sol.derived = d;
  sol.coeffs.resize(order + 1);
  sol.coeffs[0] = 1.0;
  sol.coeffs[1] = first_coefficient(d, s);
  for (int i = 0; i + 2 <= order; ++i) {
    const auto t = recurrence_triple(i, d, s, variant);
    const double next = (t.d1 * sol.coeffs[i + 1] + t.d2 * sol.coeffs[i]) / t.d3;
    if (!std::isfinite(next) || std::abs(next) > 1e300)
      throw DivergingSeries(i + 2, std::abs(next));
    sol.coeffs[i + 2] = next;
  }
  return sol;
}

PsiValue eval_psi_x(const SeriesSolution& sol, double x) {
  if (!(x > 0.0)) throw DomainError("eval_psi_x: x must be > 0");
  double s = 0.0, ds = 0.0, d2s = 0.0;
  for (auto it = sol.coeffs.rbegin(); it != sol.coeffs.rend(); ++it) {
    d2s = d2s * x + 2.0 * ds;
    ds = ds * x + s;
    s = s * x + *it;
  }
  const double alpha = sol.exponent_alpha;
  const double f = std::pow(x, alpha) * std::exp(-sol.gauss_factor * x);
  const double q = alpha / x - sol.gauss_factor;
  PsiValue v;
  v.psi = f * s;
  v.dpsi = f * (ds + q * s);
  v.d2psi = f * (d2s + 2.0 * q * ds + (q * q - alpha / (x * x)) * s);
  v.outside_convergence = !sol.terminating && x >= 1.0;
  return v;
}

std::vector<WavefunctionSample> sample_wavefunction(const SeriesSolution& sol, double xmax,
                                                    int samples) {
  if (samples < 1) throw InvalidParameter("need at least one sample");
  if (!(xmax > 0.0) || !std::isfinite(xmax)) throw InvalidParameter("xmax must be > 0");
  if (!sol.terminating && !(xmax < 1.0))
    throw DomainError("xmax must be < 1 for a non-terminating series");
  std::vector<WavefunctionSample> out;
  out.reserve(samples);
  for (int i = 1; i <= samples; ++i) {
    const double x = i == samples ? xmax : xmax * i / samples;
    const PsiValue v = eval_psi_x(sol, x);
    out.push_back({x, sol.derived.beta * std::sqrt(x), v.psi, v.dpsi});
  }
  return out;
}

ResidualReport series_residual(const SeriesSolution& sol, std::span<const double> points) {
  ResidualReport report;
  for (double x : points) {
    if (!(x >= 1e-3 && x <= 1.0 - 1e-3))
      throw DomainError("series_residual: point " + std::to_string(x) +
                        " outside [1e-3, 1 - 1e-3]");
    const PsiValue v = eval_psi_x(sol, x);
    const double lhs = transformed_lhs(sol.derived, sol.spectral, x, v.jet()).value;
    const double res = std::abs(lhs) / std::max(1.0, std::abs(v.psi));
    report.sample_points.push_back(x);
    report.residuals.push_back(res);
    report.max_residual = std::max(report.max_residual, res);
  }
  return report;
}

double changeofvar_consistency(const PhysicalParams& p, SpectralParameter s, double r,
                               const RadialProbe& probe) {
  if (!(r > 0.0)) throw DomainError("changeofvar_consistency: r must be > 0");
  if (r == p.beta) throw SingularPoint("changeofvar_consistency: r = beta");
  const Jet in_r = probe(r);
  const OdeTerms radial = radial_lhs(p, s, r, in_r);
  const double x = r * r / (p.beta * p.beta);
  const OdeTerms transformed =
      transformed_lhs(derive_params(p), s, x, to_x_variable(in_r, r, p.beta));
  return std::abs(radial.value - transformed.value / (p.beta * p.beta)) /
         std::max(1.0, radial.scale);
}

HeunParameters confluent_heun_parameters(const DerivedParams& d, SpectralParameter s) {
  const double sb2 = scaled_spectral(d, s);
  return {-d.omega, d.j, -0.5, sb2 / 4.0, 0.375 - (d.iota * d.iota + sb2) / 4.0};
}

}  // namespace heunspec
