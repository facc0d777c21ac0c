#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <doctest.h>

#include "twinbeam/spectrum.hpp"

using namespace twinbeam;
using C = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

EffectiveParams<double> fig6_params() {
  return effective_from_direct<double>(1.0, 1.0, 1e5, 1.0, 1.0, 1e4);
}

EffectiveParams<double> fig3_params(double kappa) {
  return effective_from_direct<double>(1.0, 1.0, 1e4, kappa, kappa, 1e4);
}

VectorX<double> linspace(double lo, double hi, int n) {
  VectorX<double> v(n);
  for (int i = 0; i < n; ++i) v(i) = lo + (hi - lo) * i / double(n - 1);
  return v;
}

// theta = 0 noise power in closed form for g1 = g2, kappa1 = kappa2:
//   S = 1 + 8 k^2 E^2 (f^2 + fb^2) / (k^2 + w^2)^2,
// with E = g^2 N, f = 1/(w'-w), fb = 1/(w'+w). Independent algebraic route
// used to pin the solver.
double s0_closed(const EffectiveParams<double>& e, double w) {
  const double E = e.g1 * e.g2 * e.n_atoms;
  const double f = 1.0 / (e.omega_prime - w);
  const double fb = 1.0 / (e.omega_prime + w);
  const double k = e.kappa1;
  const double d = k * k + w * w;
  return 1.0 + 8.0 * k * k * E * E * (f * f + fb * fb) / (d * d);
}

}  // namespace

TEST_CASE("empty cavity reflects with unit modulus") {
  const auto e = effective_from_direct<double>(0.0, 0.0, 1e4, 1.0, 1.0, 1e4);
  const auto sm = scattering_matrix(e, 0.7);
  CHECK(std::abs(sm.A(0, 0) - C(-0.34228187919463116, -0.9395973154362417)) <
        1e-14);
  CHECK(std::abs(std::abs(sm.A(0, 0)) - 1.0) < 1e-14);
  CHECK(sm.A(0, 1) == C(0, 0));
  CHECK(sm.A(1, 0) == C(0, 0));
}

TEST_CASE("far-off-resonant light passes straight from input to output") {
  const auto e = fig3_params(10.0);
  for (double w : {-1e9, 1e9}) {
    const auto sm = scattering_matrix(e, w);
    CHECK((sm.A - Matrix2c<double>::Identity()).norm() < 1e-7);
  }
}

TEST_CASE("commutator-preserving identities hold at every probe") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int i = 0; i < 100; ++i) {
    const auto e = effective_from_direct<double>(u(rng), u(rng), 1e4 * u(rng),
                                                 u(rng), u(rng), 1e3 * u(rng));
    for (double w : {-23.0, -3.1, -0.4, 0.0, 0.9, 4.2, 17.0}) {
      const auto sm = scattering_matrix(e, w);
      CHECK(bogoliubov_residual(sm.A) <= 1e-10);
    }
  }
}

TEST_CASE("flipping the relative pair-coupling sign breaks the identities") {
  ScatteringOptions flipped;
  flipped.off_diag_sign = -1.0;
  const auto sm = scattering_matrix(fig6_params(), -0.5, flipped);
  CHECK(bogoliubov_residual(sm.A) > 1e-3);
}

TEST_CASE("pole guard rejects frequencies at the collective-mode resonance") {
  const auto e = fig3_params(1.0);
  CHECK_THROWS_AS(scattering_matrix(e, e.omega_prime), std::domain_error);
  CHECK_THROWS_AS(squeezing_at(e, 0.0, e.omega_prime * (1.0 + 1e-9)),
                  std::domain_error);
  CHECK_NOTHROW(scattering_matrix(e, e.omega_prime * (1.0 + 1e-3)));
}

TEST_CASE("uncoupled vacuum sits exactly at the shot-noise floor") {
  for (auto [g1, g2] : {std::pair{0.0, 0.0}, std::pair{1.0, 0.0},
                        std::pair{0.0, 1.0}}) {
    const auto e = effective_from_direct<double>(g1, g2, 1e4, 2.0, 0.5, 1e4);
    for (double th : {0.0, kPi / 4, kPi / 2})
      for (double w : {-9.0, -1.0, 0.0, 0.3, 6.0})
        CHECK(std::abs(squeezing_at(e, th, w) - 1.0) <= 1e-12);
  }
}

TEST_CASE("both joint currents carry the same spectrum") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int i = 0; i < 60; ++i) {
    const auto e = effective_from_direct<double>(u(rng), u(rng), 2e4, u(rng),
                                                 u(rng), 5e3);
    const double th = u(rng), w = u(rng) - 1.5;
    const double sp = squeezing_at(e, th, w, QuadratureSign::plus);
    const double sm = squeezing_at(e, th, w, QuadratureSign::minus);
    CHECK(std::abs(sp - sm) <= 1e-10);
  }
}

TEST_CASE("quadrature angle is pi-periodic") {
  const auto e = fig6_params();
  for (double th : {0.0, 0.37, kPi / 4})
    for (double w : {-0.9, -0.2, 0.5})
      CHECK(std::abs(squeezing_at(e, th, w) - squeezing_at(e, th + kPi, w)) <=
            1e-12);
}

TEST_CASE("input-coupling sign convention does not reach the spectrum") {
  const auto e = fig6_params();
  ScatteringOptions alt;
  alt.alternate_input_sign = true;
  for (double w : {-1.7, -0.4, 0.8}) {
    CHECK(std::abs(squeezing_at(e, 0.0, w) -
                   squeezing_at(e, 0.0, w, QuadratureSign::plus, alt)) <=
          1e-12);
  }
}

TEST_CASE("theta = 0 solver against the independent closed form") {
  for (const auto& e : {fig6_params(), fig3_params(10.0), fig3_params(2.5)}) {
    const auto grid = linspace(-7, 7, 141);
    for (int i = 0; i < grid.size(); ++i)
      CHECK(std::abs(squeezing_at(e, 0.0, grid(i)) - s0_closed(e, grid(i))) <=
            1e-12);
  }
  // spot values at the narrow-line operating point
  const auto e6 = fig6_params();
  CHECK(squeezing_at(e6, 0.0, 0.0) == doctest::Approx(1.16).epsilon(1e-12));
  CHECK(squeezing_at(e6, 0.0, -0.5) ==
        doctest::Approx(1.1024).epsilon(1e-10));
  CHECK(squeezing_at(e6, 0.0, 0.5) == doctest::Approx(1.1024).epsilon(1e-10));
}

TEST_CASE("pair correlations squeeze the mixed quadrature pair") {
  // at theta = pi/4 and w = 0 the noise power reduces to
  //   S = 1 - 4 chi/k + 8 (chi/k)^2
  const auto e6 = fig6_params();  // chi = 0.1, k = 1
  CHECK(squeezing_at(e6, kPi / 4, 0.0) ==
        doctest::Approx(0.68).epsilon(1e-12));
  CHECK(squeezing_at(e6, kPi / 4, -0.5) ==
        doctest::Approx(0.731199999995841).epsilon(1e-11));
  CHECK(squeezing_at(e6, kPi / 4, 0.5) ==
        doctest::Approx(0.731199999995841).epsilon(1e-11));
  // optimal decay kappa = 4 chi halves the noise at the line center
  const auto eopt = effective_from_direct<double>(1.0, 1.0, 1e5, 0.4, 0.4, 1e4);
  CHECK(squeezing_at(eopt, kPi / 4, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("assembly reproduces the textbook parametric-amplifier spectrum") {
  // Below-threshold nondegenerate parametric amplifier: drift
  //   M = [[k - i w, -lambda], [-lambda, k - i w]]
  // over (a1, a2^dag). The difference-quadrature noise power is
  //   S0(w) = ((k - l)^2 + w^2) / ((k + l)^2 + w^2),
  // with the conjugate quadrature its reciprocal (minimum-uncertainty pair).
  const double k = 1.0;
  for (double lam : {0.2, 0.5, 0.9}) {
    for (double w : {-2.0, -0.7, 0.0, 0.4, 1.9}) {
      auto drift = [&](double nu) {
        Matrix2c<double> M;
        M(0, 0) = M(1, 1) = C(k, -nu);
        M(0, 1) = M(1, 0) = C(-lam, 0.0);
        return detail::scattering_from_drift(M, k, k);
      };
      const Matrix2c<double> Ap = drift(w), Am = drift(-w);
      const double s0 =
          detail::spectrum_from_scattering(Ap, Am, 0.0, QuadratureSign::plus);
      const double s90 = detail::spectrum_from_scattering(Ap, Am, kPi / 2,
                                                          QuadratureSign::plus);
      const double expect =
          ((k - lam) * (k - lam) + w * w) / ((k + lam) * (k + lam) + w * w);
      CHECK(s0 == doctest::Approx(expect).epsilon(1e-12));
      CHECK(s90 == doctest::Approx(1.0 / expect).epsilon(1e-12));
      CHECK(bogoliubov_residual(Ap) <= 1e-12);
    }
  }
}

TEST_CASE("dispersive approximation formula") {
  const auto e = fig6_params();
  CHECK(approx_squeezing_at(e, 0.0) == doctest::Approx(1.04).epsilon(1e-12));
  CHECK(approx_squeezing_at(e, -0.5) ==
        doctest::Approx(0.71839999999424).epsilon(1e-12));
  // no pair channel: identically one
  const auto z = effective_from_direct<double>(1.0, 0.0, 1e5, 1.0, 1.0, 1e4);
  for (double w : {-2.0, 0.0, 1.5})
    CHECK(approx_squeezing_at(z, w) == 1.0);
  // domain checks
  CHECK_THROWS_AS(approx_squeezing_at(e, 1e5), std::domain_error);
  const auto asym = effective_from_direct<double>(1.0, 1.0, 1e5, 1.0, 2.0, 1e4);
  CHECK_THROWS_AS(approx_squeezing_at(asym, 0.0), std::invalid_argument);
}

TEST_CASE("spectrum curves and the entanglement verdict") {
  const auto e = fig6_params();
  const auto grid = linspace(-3, 3, 801);

  const auto vac = squeezing_spectrum(
      effective_from_direct<double>(0.0, 0.0, 1e5, 1.0, 1.0, 1e4), 0.0, grid);
  const auto v0 = verdict(vac);
  CHECK(!v0.entangled);
  CHECK(v0.min_s == doctest::Approx(1.0).epsilon(1e-12));

  const auto curve = squeezing_spectrum(e, kPi / 4, grid);
  const auto v = verdict(curve);
  CHECK(v.entangled);
  CHECK(v.min_s == doctest::Approx(0.68).epsilon(1e-6));
  CHECK(std::abs(v.omega_min) < 0.01);
  CHECK(v.has_window);
  CHECK(v.window_lo < v.window_hi);

  // refining the grid does not change the verdict
  const auto fine = squeezing_spectrum(e, kPi / 4, linspace(-3, 3, 1601));
  CHECK(verdict(fine).entangled == v.entangled);

  // S >= 0 everywhere on the curve
  CHECK(curve.s_plus.minCoeff() >= 0.0);
  CHECK(curve.s_minus.minCoeff() >= 0.0);
}

TEST_CASE("approx_spectrum evaluates the formula over a grid") {
  const auto e = fig6_params();
  const auto grid = linspace(-2, 2, 41);
  const auto c = approx_spectrum(e, grid);
  for (int i = 0; i < grid.size(); ++i) {
    CHECK(c.s_plus(i) == doctest::Approx(approx_squeezing_at(e, grid(i))));
    CHECK(c.s_minus(i) == c.s_plus(i));
  }
}
