#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"

#include "heunspec/errors.hpp"
#include "heunspec/spectrum.hpp"

using namespace heunspec;

namespace {

PhysicalParams inverse_square(int ell, double flux, double k, double beta = 0.5) {
  PhysicalParams p;
  p.model = Model::InverseSquareOnly;
  p.omega0 = 0.0;
  p.ell = ell;
  p.flux = flux;
  p.k = k;
  p.beta = beta;
  return p;
}

PhysicalParams random_params(std::mt19937_64& rng, Model model) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PhysicalParams p;
  p.model = model;
  p.mass = 0.5 + 1.5 * u(rng);
  p.gamma = u(rng);
  p.beta = 0.2 + 0.7 * u(rng);
  p.Omega = -1.0 + 2.0 * u(rng);
  p.flux = 3.0 * u(rng);
  p.k = 0.1 + 1.9 * u(rng);
  p.ell = static_cast<int>(std::floor(13.0 * u(rng))) - 6;
  p.omega0 = model == Model::OscillatorInverseSquare ? 0.2 + 1.8 * u(rng) : 0.0;
  return p;
}

// c_2(S) as a quadratic, interpolated from the series at three spectral values.
std::array<double, 3> c2_quadratic(const PhysicalParams& p) {
  const DerivedParams d = derive_params(p);
  auto c2 = [&](double s) { return series_coefficients(d, {s, p.model}, 2).coeffs[2]; };
  const double f0 = c2(0.0), fp = c2(1.0), fm = c2(-1.0);
  return {f0, (fp - fm) / 2.0, (fp + fm) / 2.0 - f0};
}

std::vector<double> quadratic_roots(const std::array<double, 3>& q) {
  const double disc = q[1] * q[1] - 4.0 * q[2] * q[0];
  if (disc < 0.0) return {};
  const double s = std::sqrt(disc);
  std::vector<double> r{(-q[1] - s) / (2.0 * q[2]), (-q[1] + s) / (2.0 * q[2])};
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

TEST_CASE("spectral-parameter polynomials") {
  const PhysicalParams p = inverse_square(3, 0.7, 1.0);
  const DerivedParams d = derive_params(p);
  const auto table = lambda_polynomials(d, p.model, 12);
  REQUIRE(table.polys.size() == 13);
  CHECK(table.polys[0].degree() == 0);
  CHECK(table.polys[0][0] == 1.0);
  const double j = d.j, b2 = p.beta * p.beta, iota2 = d.iota * d.iota;
  CHECK(table.polys[1][1] == doctest::Approx(-b2 / (4.0 * (1.0 + j))));
  CHECK(table.polys[1][0] == doctest::Approx((j + 0.5 - iota2) / (4.0 * (1.0 + j))));
  for (int i = 0; i <= 12; ++i) CHECK(table.polys[i].degree() == i);

  std::mt19937_64 rng(41);
  for (Model model : {Model::OscillatorInverseSquare, Model::InverseSquareOnly}) {
    for (int trial = 0; trial < 10; ++trial) {
      const PhysicalParams q = random_params(rng, model);
      const DerivedParams dq = derive_params(q);
      const auto polys = lambda_polynomials(dq, model, 5).polys;
      const auto sol = series_coefficients(dq, {0.37, model}, 5);
      for (int i = 0; i <= 5; ++i)
        CHECK(polys[i](0.37) ==
              doctest::Approx(sol.coeffs[i]).epsilon(1e-12).scale(1e-300));
    }
  }
  CHECK_THROWS_AS(lambda_polynomials(d, p.model, 0), InvalidParameter);
}

TEST_CASE("n = 1 truncation roots are the roots of c_2") {
  std::mt19937_64 rng(43);
  int compared = 0;
  for (Model model : {Model::OscillatorInverseSquare, Model::InverseSquareOnly}) {
    for (int trial = 0; trial < 40; ++trial) {
      const PhysicalParams p = random_params(rng, model);
      const auto expect = quadratic_roots(c2_quadratic(p));
      const auto levels = truncation_solve(p, 1);
      const auto q = c2_quadratic(p);
      const double disc = q[1] * q[1] - 4.0 * q[2] * q[0];
      if (std::abs(disc) < 1e-8 * q[1] * q[1]) continue;
      REQUIRE(levels.size() == expect.size());
      for (std::size_t i = 0; i < levels.size(); ++i) {
        CHECK(levels[i].spectral == doctest::Approx(expect[i]).epsilon(1e-9));
        CHECK(levels[i].energy ==
              doctest::Approx(spectral_to_energy({expect[i], p.model}, p)).epsilon(1e-9));
        CHECK(levels[i].truncation_residual <= 1e-10);
        ++compared;
      }
      if (levels.size() == 2) {
        CHECK(branch_label(levels[0]) == "minus");
        CHECK(branch_label(levels[1]) == "plus");
        CHECK(levels[0].discriminant ==
              doctest::Approx(disc / (q[2] * q[2])).epsilon(1e-8));
      }
    }
  }
  CHECK(compared > 20);
}

TEST_CASE("higher truncation orders") {
  std::mt19937_64 rng(47);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 10; ++trial) {
      const PhysicalParams p = random_params(rng, Model::OscillatorInverseSquare);
      const auto levels = truncation_solve(p, n);
      CHECK(levels.size() <= static_cast<std::size_t>(n + 1));
      const auto poly = lambda_polynomials(derive_params(p), p.model, n + 1).polys[n + 1];
      for (std::size_t i = 0; i < levels.size(); ++i) {
        CHECK(branch_label(levels[i]) == "root_" + std::to_string(i));
        CHECK(std::abs(poly(levels[i].spectral)) / poly.magnitude_at(levels[i].spectral) <=
              1e-10);
        if (i > 0) CHECK(levels[i].spectral > levels[i - 1].spectral);
      }
    }
  }
}

TEST_CASE("inverse-square truncation existence at j = 1/2") {
  // c_2 has real roots exactly when iota^2 exceeds 5/6 (see the design notes).
  for (double iota : {0.3, 0.6, 0.9}) {
    const auto levels = truncation_solve(inverse_square(1, 0.5 - iota, 1.0), 1);
    CHECK(levels.empty());
  }
  for (double iota : {0.95, 1.1, 1.25}) {
    const auto levels = truncation_solve(inverse_square(1, 0.5 - iota, 1.0), 1);
    CHECK(levels.size() == 2);
  }
}

TEST_CASE("truncation roots depend on ell and flux through iota only") {
  const PhysicalParams p = inverse_square(2, 0.4, 0.7);
  PhysicalParams q = p;
  q.ell += 1;
  q.flux += 1.0;
  const auto a = truncation_solve(p, 1), b = truncation_solve(q, 1);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].spectral == b[i].spectral);
}

TEST_CASE("closed-form oscillator level") {
  PhysicalParams p;
  p.mass = 1.0;
  p.omega0 = 2.0;
  p.beta = 0.5;
  p.gamma = 0.0;
  p.ell = 1;
  p.flux = 0.25;
  p.k = 1.0;  // iota = 0.25
  p.omega_convention = OmegaConvention::AsPrinted;
  const auto minus = ground_state_closed_form(p, Branch::Minus);
  const auto plus = ground_state_closed_form(p, Branch::Plus);
  CHECK(minus.discriminant == doctest::Approx(25.5));
  CHECK(plus.discriminant == doctest::Approx(25.5));
  // 3 - 2 iota^2 + 4 w (2 + j) + 2 j with w = 1, over beta^2.
  const double centre = 3.0 - 0.125 + 10.0 + 1.0;
  CHECK(plus.spectral == doctest::Approx((centre + std::sqrt(25.5)) / 0.25));
  CHECK(minus.spectral == doctest::Approx((centre - std::sqrt(25.5)) / 0.25));
  CHECK(plus.energy > minus.energy);
  CHECK(branch_label(plus) == "plus");
  CHECK_THROWS_AS(ground_state_closed_form(p, Branch::Root), InvalidParameter);
}

TEST_CASE("closed-form inverse-square level") {
  const PhysicalParams p = inverse_square(3, 0.7, 1.0);  // iota = 1.8
  const auto minus = ground_state_closed_form(p, Branch::Minus);
  const auto plus = ground_state_closed_form(p, Branch::Plus);
  CHECK(minus.discriminant == doctest::Approx(1.18));
  CHECK(plus.spectral == doctest::Approx(4.0 * (2.0 - 3.24 + std::sqrt(1.18))));
  CHECK(minus.spectral == doctest::Approx(4.0 * (2.0 - 3.24 - std::sqrt(1.18))));
  CHECK(minus.c1_over_c0 == doctest::Approx((-1.0 + std::sqrt(1.18)) / 6.0));
  CHECK(plus.c1_over_c0 == doctest::Approx((-1.0 - std::sqrt(1.18)) / 6.0));

  const auto wf = ground_state_wavefunction(p, Branch::Minus);
  CHECK(wf.solution.terminating);
  CHECK(wf.solution.coeffs.size() == 2);
  CHECK(wf.solution.coeffs[1] == doctest::Approx(minus.c1_over_c0));
  CHECK(wf.seed_c1 ==
        doctest::Approx(first_coefficient(derive_params(p), {minus.spectral, p.model})));

  const PhysicalParams low = inverse_square(1, 0.25, 1.0);  // iota = 0.25
  CHECK_THROWS_AS(ground_state_closed_form(low, Branch::Plus), NegativeDiscriminant);
  try {
    ground_state_closed_form(low, Branch::Plus);
  } catch (const NegativeDiscriminant& e) {
    CHECK(e.value() == doctest::Approx(0.75 * 0.0625 - 1.25));
  }
}

TEST_CASE("closed forms depend on ell and flux through iota only") {
  std::mt19937_64 rng(53);
  int compared = 0;
  for (int trial = 0; trial < 50; ++trial) {
    for (Model model : {Model::OscillatorInverseSquare, Model::InverseSquareOnly}) {
      const PhysicalParams p = random_params(rng, model);
      PhysicalParams q = p;
      q.ell -= 2;
      q.flux -= 2.0;
      for (Branch b : {Branch::Minus, Branch::Plus}) {
        try {
          const double e = ground_state_closed_form(p, b).energy;
          CHECK(std::abs(ground_state_closed_form(q, b).energy - e) <= 1e-12 * std::abs(e));
          ++compared;
        } catch (const NegativeDiscriminant&) {
          CHECK_THROWS_AS(ground_state_closed_form(q, b), NegativeDiscriminant);
        }
      }
    }
  }
  CHECK(compared > 0);
}

TEST_CASE("periodicity check") {
  const LevelFunction minus = [](const PhysicalParams& q) {
    return ground_state_closed_form(q, Branch::Minus).energy;
  };
  PhysicalParams p;
  p.ell = 4;
  p.flux = 0.3;
  p.Omega = 0.4;
  const auto same = ab_periodicity_check(p, 0, minus);
  CHECK(same.abs_diff == 0.0);
  const auto two = ab_periodicity_check(p, 2, minus);
  CHECK(two.abs_diff <= 1e-12);
  CHECK(two.lhs_energy == doctest::Approx(two.rhs_energy));

  const PhysicalParams low = inverse_square(1, 0.25, 1.0);
  const LevelFunction plus = [](const PhysicalParams& q) {
    return ground_state_closed_form(q, Branch::Plus).energy;
  };
  CHECK_THROWS_AS(ab_periodicity_check(low, 1, plus), LevelMissing);
  const PhysicalParams high = inverse_square(4, 0.7, 1.0);
  CHECK(ab_periodicity_check(high, 1, plus).abs_diff <= 1e-12);
}

TEST_CASE("closed-form comparison record") {
  PhysicalParams p;
  p.gamma = 0.0;
  p.ell = 3;
  p.flux = 0.3;
  const auto cmp = compare_closed_form_vs_truncation(p);
  REQUIRE(cmp.closed_form_discriminant >= 0.0);
  CHECK(cmp.closed_form.size() == 2);
  CHECK(cmp.closed_form[0] <= cmp.closed_form[1]);
  const auto q = c2_quadratic(p);
  for (int i = 0; i < 3; ++i) CHECK(cmp.quadratic[i] == doctest::Approx(q[i]).epsilon(1e-10));
  CHECK(cmp.max_root_residual <= 1e-10);
  for (const auto& pair : cmp.pairing) CHECK(std::isfinite(pair.relative_difference));
  if (cmp.label == AuditLabel::Agree)
    for (const auto& pair : cmp.pairing) CHECK(pair.relative_difference <= kAgreeTolerance);
  CHECK(to_string(cmp.label) == (cmp.label == AuditLabel::Agree ? "AGREE" : "DISCREPANT"));

  const auto neg = compare_closed_form_vs_truncation(inverse_square(1, 0.25, 1.0));
  CHECK(neg.closed_form.empty());
  CHECK(neg.closed_form_discriminant < 0.0);
  CHECK(neg.truncation.empty());
  CHECK(neg.same_emptiness);
}

TEST_CASE("joint termination yields polynomial states") {
  PhysicalParams p;
  p.gamma = 0.0;
  p.ell = 2;
  p.flux = 0.8;
  p.k = 1.0;
  const int n = 1;
  const auto sols = joint_termination_scan(p, n, 0.01, 5.0, 200);
  REQUIRE(!sols.empty());
  const double j = derive_params(p).j;
  for (const auto& s : sols) {
    CHECK(s.converged);
    const double l = s.spectral * p.beta * p.beta;
    double best = 1.0;
    for (int m = 0; m <= n; ++m)
      best = std::min(best, std::abs(l - s.omega * (4.0 * m + 3.0 + 2.0 * j)) / std::abs(l));
    CHECK(best <= 1e-9);

    PhysicalParams q = p;
    q.omega0 = s.omega0;
    const DerivedParams d = derive_params(q);
    CHECK(d.omega == doctest::Approx(s.omega).epsilon(1e-12));
    // A terminating solution satisfies the equation beyond the unit disc.
    SeriesSolution poly = series_coefficients(d, {s.spectral, q.model}, n + 2);
    poly.coeffs.resize(n + 1);
    poly.terminating = true;
    for (double x : {1.7, 3.0}) {
      const auto v = eval_psi_x(poly, x);
      const auto lhs = transformed_lhs(d, {s.spectral, q.model}, x, v.jet());
      CHECK(std::abs(lhs.value) <= 1e-9 * lhs.scale);
    }
  }
}
