#pragma once

// The two forms of the radial equation, evaluated pointwise on a function
// supplied together with its first two derivatives.
//
//   r-form:  psi'' + r/(r^2-b^2) psi' + [S - M^2 w0^2 r^2 - 2 M gamma / r^2
//                                        - iota^2/(r^2-b^2)] psi
//   x-form:  4x psi'' + (4x-2)/(x-1) psi' + [S b^2 - omega^2 x - 2 M gamma / x
//                                            - iota^2/(x-1)] psi
//
// with x = r^2/b^2 and S the spectral parameter of the model.

#include <functional>

#include "heunspec/model.hpp"

namespace heunspec {

/// A function value and its first two derivatives at one point.
struct Jet {
  double f = 0.0;
  double df = 0.0;
  double d2f = 0.0;
};

using RadialProbe = std::function<Jet(double r)>;

/// exp(-a r^2) (1 + b r^2), with analytic derivatives.
RadialProbe gaussian_probe(double a = 1.0, double b = 0.0);

/// Value of an ODE left side together with the sum of the magnitudes of its
/// terms, the scale against which rounding in `value` is judged.
struct OdeTerms {
  double value = 0.0;
  double scale = 0.0;
};

/// r-form left side. Throws SingularPoint at r = beta, DomainError for r <= 0.
OdeTerms radial_lhs(const PhysicalParams& p, SpectralParameter s, double r,
                    const Jet& psi);

/// x-form left side, driven by the derived symbols (iota, omega, j, beta).
/// Throws SingularPoint at x = 1, DomainError for x <= 0.
OdeTerms transformed_lhs(const DerivedParams& d, SpectralParameter s, double x,
                         const Jet& psi);

/// Re-expresses a function of r as a function of x = r^2/beta^2.
Jet to_x_variable(const Jet& in_r, double r, double beta);

}  // namespace heunspec
