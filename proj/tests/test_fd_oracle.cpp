#include <cmath>
#include <random>

#include "doctest.h"

#include "heunspec/errors.hpp"
#include "heunspec/fd_oracle.hpp"

using namespace heunspec;

namespace {

PhysicalParams flat_params(int ell, double gamma) {
  PhysicalParams p;
  p.mass = 1.0;
  p.omega0 = 1.0;
  p.gamma = gamma;
  p.ell = ell;
  p.flux = 0.0;
  return p;
}

}  // namespace

TEST_CASE("effective potential") {
  // Vanishing dislocation: the textbook 2D symmetrized oscillator.
  PhysicalParams p = flat_params(2, 0.0);
  p.beta = 1e-9;
  p.k = 1.0;
  for (double r : {0.3, 1.0, 2.5}) {
    const double expect = r * r + (4.0 - 0.25) / (r * r);
    CHECK(effective_potential(r, p) == doctest::Approx(expect).epsilon(1e-7));
  }

  PhysicalParams far;
  far.model = Model::InverseSquareOnly;
  far.omega0 = 0.0;
  far.ell = 3;
  far.beta = 0.5;
  const double iota = derive_params(far).iota;
  CHECK(effective_potential(500.0, far) * 250000.0 ==
        doctest::Approx(iota * iota - 0.25).epsilon(1e-4));

  CHECK_THROWS_AS(effective_potential(0.5, far), SingularPoint);
  CHECK_THROWS_AS(effective_potential(0.0, far), DomainError);
}

TEST_CASE("Liouville form reproduces the radial equation") {
  // psi = |r^2 - b^2|^{-1/4} u turns the r-form into w (u'' + (S - U) u).
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    PhysicalParams p;
    p.mass = 0.5 + uni(rng);
    p.gamma = uni(rng);
    p.beta = 0.2 + 0.7 * uni(rng);
    p.ell = trial % 5 - 2;
    p.flux = uni(rng);
    const double S = 10.0 * uni(rng);
    const double r = p.beta * (trial % 2 ? 0.3 + 0.6 * uni(rng) : 1.2 + uni(rng));
    const double b2 = p.beta * p.beta;
    auto w = [&](double x) { return std::pow(std::abs(x * x - b2), -0.25); };
    auto u = [](double x) { return std::exp(-x * x) * (1.0 + x); };
    auto psi = [&](double x) { return w(x) * u(x); };
    const double h = 1e-3 * p.beta;
    const double d1 = (psi(r - 2 * h) - 8 * psi(r - h) + 8 * psi(r + h) - psi(r + 2 * h)) / (12 * h);
    const double d2 = (-psi(r - 2 * h) + 16 * psi(r - h) - 30 * psi(r) + 16 * psi(r + h) -
                       psi(r + 2 * h)) /
                      (12 * h * h);
    const double u2 = std::exp(-r * r) * (4 * r * r * r + 4 * r * r - 6 * r - 2);
    const double expect = w(r) * (u2 + (S - effective_potential(r, p)) * u(r));
    const auto lhs = radial_lhs(p, {S, p.model}, r, {psi(r), d1, d2});
    CHECK(lhs.value == doctest::Approx(expect).epsilon(1e-6).scale(lhs.scale));
  }
}

TEST_CASE("flat-space exact spectrum") {
  CHECK(flat_exact_spectrum(flat_params(0, 0.0), 0) == doctest::Approx(2.0));
  CHECK(flat_exact_spectrum(flat_params(2, 0.0), 1) == doctest::Approx(10.0));
  PhysicalParams p = flat_params(1, 0.3);
  p.flux = 0.4;
  PhysicalParams q = p;
  q.ell += 1;
  q.flux += 1.0;
  CHECK(flat_exact_spectrum(p, 2) == flat_exact_spectrum(q, 2));
}

TEST_CASE("flat-mode oracle") {
  const PhysicalParams p = flat_params(0, 0.0);
  const auto r = oracle_eigenvalues(p, default_grid(p, GridMode::Flat, 4000), 5);
  REQUIRE(r.eigenvalues.size() == 5);
  for (int n = 0; n < 5; ++n) {
    const double exact = flat_exact_spectrum(p, n);
    CHECK(std::abs(r.eigenvalues[n] - exact) / exact <= 5e-4);
    CHECK(r.residual_norms[n] <= 1e-6);
  }
  CHECK(r.eigenvectors.size() == 5);
  CHECK(r.nodes.size() == r.eigenvectors[0].size());

  const auto plus = oracle_eigenvalues(flat_params(2, 0.0), default_grid(p, GridMode::Flat, 1000), 3);
  const auto minus =
      oracle_eigenvalues(flat_params(-2, 0.0), default_grid(p, GridMode::Flat, 1000), 3);
  for (int n = 0; n < 3; ++n) CHECK(plus.eigenvalues[n] == minus.eigenvalues[n]);
}

TEST_CASE("grid refinement converges at second order") {
  const PhysicalParams p = flat_params(1, 0.5);
  const double exact = flat_exact_spectrum(p, 0);
  double err[3];
  for (int k = 0; k < 3; ++k) {
    const auto r = oracle_eigenvalues(p, default_grid(p, GridMode::Flat, 500 << k), 1);
    err[k] = std::abs(r.eigenvalues[0] - exact);
  }
  CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.12));
  CHECK(err[1] / err[2] == doctest::Approx(4.0).epsilon(0.12));
}

TEST_CASE("outer-mode eigenvalues rise with gamma") {
  std::vector<double> prev;
  for (double gamma : {0.0, 0.25, 0.5}) {
    PhysicalParams p = flat_params(1, gamma);
    p.flux = 0.3;
    const auto r = oracle_eigenvalues(p, default_grid(p, GridMode::Outer, 2000), 5);
    if (!prev.empty())
      for (int n = 0; n < 5; ++n) CHECK(r.eigenvalues[n] >= prev[n]);
    prev = r.eigenvalues;
  }
}

TEST_CASE("core mode and grid checks") {
  PhysicalParams p;
  p.beta = 0.5;
  GridSpec core = default_grid(p, GridMode::Core, 2000);
  CHECK(core.r_max < p.beta);
  core.r_max = 0.49;
  const auto r = oracle_eigenvalues(p, core, 3);
  CHECK(r.eigenvalues.size() == 3);
  CHECK(r.r_hi == doctest::Approx(0.49));

  GridSpec outer = default_grid(p, GridMode::Outer, 1000);
  CHECK(outer.r_min >= p.beta);
  outer.r_min = 0.3;
  CHECK_THROWS_AS(validate(outer, p), InvalidParameter);
  CHECK_THROWS_AS(oracle_eigenvalues(p, outer, 3), InvalidParameter);

  GridSpec wide_core = core;
  wide_core.r_max = 0.8;
  CHECK_THROWS_AS(validate(wide_core, p), InvalidParameter);

  GridSpec tiny = default_grid(p, GridMode::Flat, 4);
  CHECK_THROWS_AS(oracle_eigenvalues(p, tiny, 10), InvalidParameter);

  CHECK(parse_grid_mode("core") == GridMode::Core);
  CHECK_THROWS_AS(parse_grid_mode("ring"), InvalidParameter);
}

TEST_CASE("central-difference Liouville scheme") {
  const PhysicalParams p = flat_params(2, 0.5);
  const auto r = oracle_eigenvalues(p, default_grid(p, GridMode::Flat, 4000), 3,
                                    Discretization::LiouvilleCentral);
  for (int n = 0; n < 3; ++n)
    CHECK(r.eigenvalues[n] == doctest::Approx(flat_exact_spectrum(p, n)).epsilon(1e-3));
}

TEST_CASE("separation of the 3D operator") {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    PhysicalParams p;
    p.gamma = u(rng);
    p.beta = 0.2 + 0.7 * u(rng);
    p.Omega = u(rng) - 0.5;
    p.flux = 2.0 * u(rng);
    p.k = 0.1 + 2.0 * u(rng);
    p.ell = trial % 7 - 3;
    const auto probe = gaussian_probe(0.5 + u(rng), u(rng));
    const double r = 1.3 * p.beta;
    const double phi = 6.0 * u(rng), z = 4.0 * u(rng) - 2.0;
    CHECK(separation_residual(p, probe, r, phi, z) <= 1e-8);
    CHECK(separation_residual(p, probe, r, phi, z, 3.7) <= 1e-8);
  }
  PhysicalParams p;
  p.ell = 0;
  p.flux = 0.0;
  p.Omega = 0.0;
  CHECK(separation_residual(p, gaussian_probe(), 1.3 * p.beta, 0.4, 0.2) <= 1e-8);
  // Dropping the longitudinal second derivative leaves a k^2/(2M) gap.
  CHECK(separation_residual(p, gaussian_probe(), 1.3 * p.beta, 0.4, 0.2, 0.0,
                            OperatorForm::AsPrinted) > 1e-3);
}

TEST_CASE("oracle comparison report") {
  PhysicalParams p;
  p.ell = 3;
  p.flux = 0.3;
  const auto report = oracle_vs_closed_form_report(p, 1000, 4);
  CHECK(report.closed_form.size() == 2);
  CHECK(report.sections.size() == 3);
  for (const auto& s : report.sections) {
    CHECK(s.error.empty());
    CHECK(s.oracle.eigenvalues.size() >= 3);
  }

  PhysicalParams neg;
  neg.model = Model::InverseSquareOnly;
  neg.omega0 = 0.0;
  neg.ell = 1;
  neg.flux = 0.25;
  const auto empty = oracle_vs_closed_form_report(neg, 1000, 4);
  CHECK(empty.closed_form.empty());
  CHECK(empty.closed_form_discriminant < 0.0);
  CHECK(empty.sections.size() == 3);
}
