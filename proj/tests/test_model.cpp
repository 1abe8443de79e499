#include <cmath>
#include <random>

#include "doctest.h"

#include "heunspec/errors.hpp"
#include "heunspec/model.hpp"

using namespace heunspec;

TEST_CASE("derived symbols") {
  PhysicalParams p;
  p.mass = 1.0;
  p.gamma = 0.0;
  CHECK(derive_params(p).j == doctest::Approx(0.5).epsilon(1e-15));

  p.ell = 1;
  p.flux = 0.25;
  p.beta = 0.5;
  p.k = 1.0;
  CHECK(derive_params(p).iota == doctest::Approx(0.25).epsilon(1e-15));

  p.omega0 = 2.0;
  p.omega_convention = OmegaConvention::AsPrinted;
  CHECK(derive_params(p).omega == doctest::Approx(1.0).epsilon(1e-15));
  p.omega_convention = OmegaConvention::Scaled;
  CHECK(derive_params(p).omega == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("iota is invariant under the joint shift of ell and flux") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    PhysicalParams p;
    p.flux = u(rng);
    p.ell = static_cast<int>(trial % 7) - 3;
    const double iota = derive_params(p).iota;
    for (int nu : {-2, 1, 3}) {
      PhysicalParams q = p;
      q.ell += nu;
      q.flux += nu;
      CHECK(derive_params(q).iota == doctest::Approx(iota).epsilon(1e-14));
    }
  }
}

TEST_CASE("energy and spectral parameter") {
  PhysicalParams p;
  p.k = 1.0;
  CHECK(spectral_to_energy({0.0, p.model}, p) == doctest::Approx(0.5));
  CHECK(energy_to_spectral(0.5, p).value == doctest::Approx(0.0));

  p.delta = 0.3;
  CHECK(energy_to_spectral(0.8, p).value == doctest::Approx(0.0));

  PhysicalParams q;
  q.model = Model::InverseSquareOnly;
  q.omega0 = 0.0;
  q.Omega = 1.0;
  q.ell = 1;
  q.flux = 0.25;
  q.beta = 0.5;
  q.k = 1.0;
  CHECK(spectral_to_energy({2.0, q.model}, q) == doctest::Approx(1.25));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    PhysicalParams r;
    r.mass = 0.5 + std::abs(u(rng)) / 10.0;
    r.Omega = u(rng) / 10.0;
    r.delta = u(rng) / 10.0;
    r.flux = std::abs(u(rng)) / 5.0;
    const double s = u(rng);
    const double e = spectral_to_energy({s, r.model}, r);
    CHECK(energy_to_spectral(e, r).value == doctest::Approx(s).epsilon(1e-12));
  }
}

TEST_CASE("model mismatch") {
  PhysicalParams p;
  CHECK_THROWS_AS(spectral_to_energy({1.0, Model::InverseSquareOnly}, p), ModelMismatch);
}

TEST_CASE("parameter validation") {
  PhysicalParams p;
  CHECK_NOTHROW(validate(p));
  auto bad = [](auto mutate) {
    PhysicalParams q;
    mutate(q);
    CHECK_THROWS_AS(validate(q), InvalidParameter);
  };
  bad([](PhysicalParams& q) { q.mass = 0.0; });
  bad([](PhysicalParams& q) { q.k = 0.0; });
  bad([](PhysicalParams& q) { q.beta = 1.0; });
  bad([](PhysicalParams& q) { q.beta = 0.0; });
  bad([](PhysicalParams& q) { q.gamma = -0.1; });
  bad([](PhysicalParams& q) { q.omega0 = 0.0; });
  bad([](PhysicalParams& q) { q.flux = std::nan(""); });
  bad([](PhysicalParams& q) {
    q.model = Model::InverseSquareOnly;
    q.omega0 = 1.0;
  });
  bad([](PhysicalParams& q) {
    q.model = Model::InverseSquareOnly;
    q.omega0 = 0.0;
    q.delta = 1.0;
  });

  PhysicalParams neg;
  neg.flux = -0.5;
  CHECK_NOTHROW(validate(neg));
  CHECK(flux_warning(neg));
}

TEST_CASE("name parsing") {
  CHECK(parse_model("inverse-square") == Model::InverseSquareOnly);
  CHECK(parse_omega_convention("printed") == OmegaConvention::AsPrinted);
  CHECK(to_string(parse_model("oscillator")) == "oscillator");
  CHECK_THROWS_AS(parse_model("coulomb"), InvalidParameter);
  CHECK_THROWS_AS(parse_omega_convention("other"), InvalidParameter);
}
