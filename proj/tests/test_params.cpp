#include <cmath>
#include <random>

#include <doctest.h>

#include "twinbeam/params.hpp"

using namespace twinbeam;

namespace {
constexpr double kTwoPi = 6.283185307179586;
}

TEST_CASE("two-photon reduction of the measured cavity parameters") {
  // couplings of the order reported for a condensate in a high-finesse cavity:
  // lambda = 2 pi x 10.6, pump at the same strength, detuning ten couplings up
  PhysicalParams<double> p;
  p.lambda1 = p.lambda2 = kTwoPi * 10.6;
  p.rabi1 = p.rabi2 = p.lambda1;
  p.delta = 10.0 * p.lambda1;
  p.omega21 = 1.5e3;
  p.nu = 0.0;
  p.kappa1 = p.kappa2 = kTwoPi * 1.3;
  p.n_atoms = 10000;
  p.unit = "MHz";

  const auto e = derive_effective(p);
  CHECK(e.g1 == doctest::Approx(p.lambda1 / 10.0).epsilon(1e-14));
  CHECK(e.g1 == doctest::Approx(6.66).epsilon(1e-2));
  CHECK(e.g2 == e.g1);
  // equal pump strengths leave the level splitting unshifted
  CHECK(e.omega_prime == doctest::Approx(p.omega21).epsilon(1e-14));
  CHECK(e.kappa1 / e.g1 == doctest::Approx(1.22).epsilon(1e-2));
  CHECK(e.unit == "MHz");
}

TEST_CASE("switching one pump off removes the pair channel") {
  PhysicalParams<double> p;
  p.lambda1 = p.lambda2 = 5.0;
  p.rabi1 = 5.0;
  p.rabi2 = 0.0;
  p.delta = 50.0;
  p.omega21 = 2e3;
  p.nu = 10.0;
  p.kappa1 = p.kappa2 = 1.0;
  p.n_atoms = 100;
  const auto e = derive_effective(p);
  CHECK(e.g2 == 0.0);
  CHECK(e.chi2 == 0.0);
  CHECK(e.chi == 0.0);
  CHECK(e.chi1 > 0.0);
}

TEST_CASE("chi values from direct effective inputs") {
  const auto e = effective_from_direct<double>(1.0, 1.0, 1e4, 10.0, 10.0, 1e4);
  CHECK(e.chi1 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.chi2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.chi == doctest::Approx(1.0).epsilon(1e-14));

  const auto z = effective_from_direct<double>(0.0, 0.0, 1e4, 1.0, 1.0, 1e4);
  CHECK(z.chi == 0.0);
}

TEST_CASE("parameter errors") {
  PhysicalParams<double> p;
  p.delta = 0.0;
  p.n_atoms = 10;
  CHECK_THROWS_AS(derive_effective(p), std::domain_error);

  p.delta = 1.0;
  p.omega21 = 0.0;
  p.nu = 5.0;  // omega' = -5
  CHECK_THROWS_WITH(derive_effective(p),
                    "effective oscillator frequency not positive");

  CHECK_THROWS_AS(effective_from_direct<double>(1, 1, -2, 1, 1, 10),
                  std::domain_error);
  CHECK_THROWS_AS(effective_from_direct<double>(1, 1, 2, 1, 1, -1.0),
                  std::invalid_argument);
}

TEST_CASE("chi consistency and chi^2 = chi1 chi2 over random inputs") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> u(0.05, 20.0);
  for (int i = 0; i < 200; ++i) {
    const double g1 = u(rng), g2 = u(rng), wp = 10.0 * u(rng);
    const double n = std::floor(10.0 * u(rng)) + 1;
    const auto e = effective_from_direct<double>(g1, g2, wp, u(rng), u(rng), n);
    CHECK(std::abs(e.chi1 - g1 * g1 * n / wp) <= 1e-12 * std::abs(e.chi1));
    CHECK(std::abs(e.chi2 - g2 * g2 * n / wp) <= 1e-12 * std::abs(e.chi2));
    CHECK(std::abs(e.chi * e.chi - e.chi1 * e.chi2) <=
          1e-12 * std::abs(e.chi1 * e.chi2));
  }
}

TEST_CASE("rate inputs are homogeneous under a common rescaling") {
  PhysicalParams<double> p;
  p.lambda1 = 3.0;
  p.lambda2 = 2.0;
  p.rabi1 = 4.0;
  p.rabi2 = 1.5;
  p.delta = 60.0;
  p.omega21 = 900.0;
  p.nu = 30.0;
  p.kappa1 = 2.0;
  p.kappa2 = 0.7;
  p.n_atoms = 321;
  const auto e = derive_effective(p);

  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(0.1, 8.0);
  for (int i = 0; i < 50; ++i) {
    const double s = u(rng);
    PhysicalParams<double> q = p;
    q.lambda1 *= s;
    q.lambda2 *= s;
    q.rabi1 *= s;
    q.rabi2 *= s;
    q.delta *= s;
    q.omega21 *= s;
    q.nu *= s;
    q.kappa1 *= s;
    q.kappa2 *= s;
    const auto es = derive_effective(q);
    CHECK(es.g1 == doctest::Approx(s * e.g1).epsilon(1e-12));
    CHECK(es.g2 == doctest::Approx(s * e.g2).epsilon(1e-12));
    CHECK(es.omega_prime == doctest::Approx(s * e.omega_prime).epsilon(1e-12));
    // dimensionless ratios are unchanged
    CHECK(es.kappa1 / es.g1 == doctest::Approx(e.kappa1 / e.g1).epsilon(1e-12));
    CHECK(es.omega_prime / es.g1 ==
          doctest::Approx(e.omega_prime / e.g1).epsilon(1e-12));
  }
}

TEST_CASE("regime report on the standard operating point") {
  PhysicalParams<double> p;
  p.lambda1 = p.lambda2 = 1.0;
  p.rabi1 = p.rabi2 = 1.0;
  p.delta = 10.0;
  p.omega21 = 1e4 * 0.1;  // g = 0.1, omega' = 1e3 = 1e4 g
  p.nu = 0.0;
  p.kappa1 = p.kappa2 = 0.1;
  p.n_atoms = 10000;
  const auto e = derive_effective(p);
  const auto rep = validate_regimes(p, e, 10.0);

  REQUIRE(rep.checks.size() == 3);
  CHECK(rep.checks[0].name == "adiabatic_elimination");
  CHECK(rep.checks[0].ratio == doctest::Approx(10.0));
  CHECK(rep.checks[0].pass);
  CHECK(rep.checks[1].name == "low_excitation");
  CHECK(rep.checks[1].ratio == doctest::Approx(100.0));
  CHECK(rep.checks[1].pass);
  // omega' / (g1 g2 N) = 1e3 / (0.01 * 1e4) = 10: borderline pass at margin 10
  CHECK(rep.checks[2].name == "dispersive_expansion");
  CHECK(rep.checks[2].ratio == doctest::Approx(10.0));
}

TEST_CASE("dispersive check fails where the low-excitation check passes") {
  const auto e = effective_from_direct<double>(1.0, 1.0, 1e4, 1.0, 1.0, 1e4);
  const auto rep = validate_regimes(e, 10.0);
  REQUIRE(rep.checks.size() == 2);
  CHECK(rep.checks[0].ratio == doctest::Approx(100.0));  // omega'/(g sqrt N)
  CHECK(rep.checks[0].pass);
  CHECK(rep.checks[1].ratio == doctest::Approx(1.0));  // omega'/(g^2 N)
  CHECK(!rep.checks[1].pass);
}

TEST_CASE("single-atom limit passes trivially; zero coupling gives inf ratios") {
  const auto e = effective_from_direct<double>(1.0, 1.0, 1e3, 1.0, 1.0, 1.0);
  CHECK(validate_regimes(e, 10.0).all_pass());

  const auto z = effective_from_direct<double>(0.0, 0.0, 1e3, 1.0, 1.0, 100.0);
  const auto rep = validate_regimes(z, 10.0);
  for (const auto& c : rep.checks) {
    CHECK(std::isinf(c.ratio));
    CHECK(c.pass);
  }
}

TEST_CASE("pass/fail is monotone in the margin") {
  const auto e = effective_from_direct<double>(0.7, 1.3, 5e3, 2.0, 2.0, 400.0);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.5, 400.0);
  for (int i = 0; i < 100; ++i) {
    double m1 = u(rng), m2 = u(rng);
    if (m1 > m2) std::swap(m1, m2);
    const auto r1 = validate_regimes(e, m1);
    const auto r2 = validate_regimes(e, m2);
    for (std::size_t k = 0; k < r1.checks.size(); ++k) {
      // tightening the margin can only turn passes into failures
      if (r2.checks[k].pass) CHECK(r1.checks[k].pass);
    }
  }
}
