#ifndef TWINBEAM_SU11_HPP
#define TWINBEAM_SU11_HPP

#include <cmath>
#include <complex>
#include <stdexcept>

#include "twinbeam/params.hpp"
#include "twinbeam/types.hpp"

namespace twinbeam {

/// Parameters of the normal-ordered factorization
///   exp(gamma_tilde K3 + gamma (K+ + K-)) = exp(G K+) exp(ln(Gt) K3) exp(G K-)
/// for the two-mode realization K+ = a1^dag a2^dag, K3 = (a1^dag a1 + a2 a2^dag)/2.
template <typename Real>
struct Su11Coefficients {
  Complex<Real> gamma;        // coefficient of K+ and K- in the exponent
  Complex<Real> gamma_tilde;  // coefficient of K3 in the exponent
  Complex<Real> beta;         // principal branch of sqrt(gamma_tilde^2/4 - gamma^2)
  Complex<Real> Gamma;        // pair amplitude ratio, |Gamma| < 1 for unitary evolution
  Complex<Real> Gamma_tilde;  // K3 factor; the vacuum prefactor is Gamma_tilde^(1/2)
};

namespace detail {

// sinh(beta)/beta and cosh(beta) continued through beta = 0. Both are even in
// beta, so only beta^2 enters; below |beta| = 1e-6 a three-term series keeps
// full double accuracy through the removable singularity.
template <typename Real>
void sinhc_cosh(const Complex<Real>& beta, Complex<Real>& s, Complex<Real>& c) {
  const Complex<Real> b2 = beta * beta;
  if (std::abs(beta) < Real(1e-6)) {
    s = Real(1) + b2 / Real(6) + b2 * b2 / Real(120);
    c = Real(1) + b2 / Real(2) + b2 * b2 / Real(24);
  } else {
    s = std::sinh(beta) / beta;
    c = std::cosh(beta);
  }
}

template <typename Real>
Su11Coefficients<Real> disentangle(const Complex<Real>& gamma,
                                   const Complex<Real>& gamma_tilde,
                                   int beta_branch = +1) {
  Su11Coefficients<Real> out;
  out.gamma = gamma;
  out.gamma_tilde = gamma_tilde;
  out.beta = Real(beta_branch) *
             std::sqrt(gamma_tilde * gamma_tilde / Real(4) - gamma * gamma);
  Complex<Real> s, c;
  sinhc_cosh(out.beta, s, c);
  const Complex<Real> den = c - Real(0.5) * gamma_tilde * s;
  out.Gamma = gamma * s / den;
  out.Gamma_tilde = Real(1) / (den * den);
  return out;
}

}  // namespace detail

/// Closed-form evolution parameters for exp(-i H_pair tau) acting on vacuum.
/// H_pair is the dispersive pair Hamiltonian obtained by eliminating the
/// collective mode, H_pair = -[chi1 a1^dag a1 + chi2 a2 a2^dag + chi (K+ + K-)],
/// so the K3 coefficient is -(chi1 + chi2) and gamma = +i chi tau.
template <typename Real>
Su11Coefficients<Real> su11_coefficients(const EffectiveParams<Real>& e,
                                         Real tau) {
  if (tau < Real(0)) throw std::invalid_argument("tau must be >= 0");
  const Complex<Real> I(0, 1);
  const Complex<Real> gamma = I * e.chi * tau;
  const Complex<Real> gamma_tilde = I * (e.chi1 + e.chi2) * tau;
  return detail::disentangle<Real>(gamma, gamma_tilde);
}

}  // namespace twinbeam

#endif
