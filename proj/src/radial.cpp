#include "heunspec/radial.hpp"

#include <cmath>

#include "heunspec/errors.hpp"

namespace heunspec {

RadialProbe gaussian_probe(double a, double b) {
  return [a, b](double r) {
    const double r2 = r * r;
    const double g = std::exp(-a * r2);
    const double poly = 1.0 + b * r2;
    const double dpoly = 2.0 * b * r;
    const double d2poly = 2.0 * b;
    const double dg = -2.0 * a * r * g;
    const double d2g = (4.0 * a * a * r2 - 2.0 * a) * g;
    return Jet{g * poly, dg * poly + g * dpoly, d2g * poly + 2.0 * dg * dpoly + g * d2poly};
  };
}

OdeTerms radial_lhs(const PhysicalParams& p, SpectralParameter s, double r,
                    const Jet& psi) {
  if (s.model != p.model) throw ModelMismatch("radial_lhs: model mismatch");
  if (!(r > 0.0)) throw DomainError("radial_lhs: r must be > 0");
  const double gap = r * r - p.beta * p.beta;
  if (gap == 0.0) throw SingularPoint("radial_lhs: r = beta");
  const double iota = derive_params(p).iota;

  const double t_first = r / gap * psi.df;
  const double t_spec = s.value * psi.f;
  const double t_osc = -p.mass * p.mass * p.omega0 * p.omega0 * r * r * psi.f;
  const double t_inv = -2.0 * p.mass * p.gamma / (r * r) * psi.f;
  const double t_ab = -iota * iota / gap * psi.f;
  return {psi.d2f + t_first + t_spec + t_osc + t_inv + t_ab,
          std::abs(psi.d2f) + std::abs(t_first) + std::abs(t_spec) +
              std::abs(t_osc) + std::abs(t_inv) + std::abs(t_ab)};
}

OdeTerms transformed_lhs(const DerivedParams& d, SpectralParameter s, double x,
                         const Jet& psi) {
  if (!(x > 0.0)) throw DomainError("transformed_lhs: x must be > 0");
  if (x == 1.0) throw SingularPoint("transformed_lhs: x = 1");
  const double two_m_gamma = d.j * d.j - 0.25;

  const double t_second = 4.0 * x * psi.d2f;
  const double t_first = (4.0 * x - 2.0) / (x - 1.0) * psi.df;
  const double t_spec = s.value * d.beta * d.beta * psi.f;
  const double t_osc = -d.omega * d.omega * x * psi.f;
  const double t_inv = -two_m_gamma / x * psi.f;
  const double t_ab = -d.iota * d.iota / (x - 1.0) * psi.f;
  return {t_second + t_first + t_spec + t_osc + t_inv + t_ab,
          std::abs(t_second) + std::abs(t_first) + std::abs(t_spec) +
              std::abs(t_osc) + std::abs(t_inv) + std::abs(t_ab)};
}

Jet to_x_variable(const Jet& in_r, double r, double beta) {
  // r = beta sqrt(x): dr/dx = beta^2 / (2r), d2r/dx2 = -beta^4 / (4 r^3).
  const double b2 = beta * beta;
  const double rx = b2 / (2.0 * r);
  const double rxx = -b2 * b2 / (4.0 * r * r * r);
  return {in_r.f, in_r.df * rx, in_r.d2f * rx * rx + in_r.df * rxx};
}

}  // namespace heunspec
