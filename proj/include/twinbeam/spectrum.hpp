#ifndef TWINBEAM_SPECTRUM_HPP
#define TWINBEAM_SPECTRUM_HPP

#include <cmath>
#include <stdexcept>

#include "twinbeam/params.hpp"
#include "twinbeam/types.hpp"

namespace twinbeam {

enum class QuadratureSign { plus, minus };

struct ScatteringOptions {
  double pole_guard_rel = 1e-6;     // exclusion zone |omega - omega'| <= rel * omega'
  double off_diag_sign = +1.0;      // -1 flips M21 only, i.e. the relative sign
                                    // of the two pair couplings; breaks the
                                    // output commutators (negative control)
  bool alternate_input_sign = false;  // drive +sqrt(2k)a_in with output
                                      // sqrt(2k)a - a_in; maps A -> -A
};

/// Frequency-domain input-output matrix relating (a1_out(w), a2_out^dag(w))
/// to (a1_in(w), a2_in^dag(w)).
template <typename Real>
struct ScatteringMatrix {
  Real omega = 0;
  Matrix2c<Real> A;
  Real condition_number = 0;  // 1-norm condition of the drift matrix
};

/// Largest residual of the commutator-preservation identities
///   |A11|^2 - |A12|^2 = 1,  |A22|^2 - |A21|^2 = 1,  A11 A21* - A12 A22* = 0.
template <typename Real>
Real bogoliubov_residual(const Matrix2c<Real>& A) {
  const Real r1 = std::abs(std::norm(A(0, 0)) - std::norm(A(0, 1)) - Real(1));
  const Real r2 = std::abs(std::norm(A(1, 1)) - std::norm(A(1, 0)) - Real(1));
  const Real r3 = std::abs(A(0, 0) * std::conj(A(1, 0)) -
                           A(0, 1) * std::conj(A(1, 1)));
  return std::max({r1, r2, r3});
}

namespace detail {

// Joint homodyne current at quadrature angle theta, as weights on
// (a1_out, a1_out^dag, a2_out, a2_out^dag):
//   plus:  ( e^-it,  e^it, -e^-it, -e^it)
//   minus: (-i e^-it, i e^it, -i e^-it, i e^it)
template <typename Real>
struct CurrentWeights {
  Complex<Real> w1, w2, w3, w4;
};

template <typename Real>
CurrentWeights<Real> current_weights(Real theta, QuadratureSign sign) {
  const Complex<Real> u = std::exp(Complex<Real>(0, -theta));
  const Complex<Real> v = std::exp(Complex<Real>(0, +theta));
  if (sign == QuadratureSign::plus) return {u, v, -u, -v};
  const Complex<Real> I(0, 1);
  return {-I * u, I * v, -I * u, I * v};
}

// Input-output matrix for an arbitrary drift matrix M x = -D u,
// a_out = u + D x with D = diag(sqrt(2 k1), sqrt(2 k2)).
template <typename Real>
Matrix2c<Real> scattering_from_drift(const Matrix2c<Real>& M, Real kappa1,
                                     Real kappa2) {
  const Complex<Real> det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
  if (det == Complex<Real>(0))
    throw std::domain_error("singular drift matrix");
  Matrix2c<Real> A;
  const Real cross = 2 * std::sqrt(kappa1 * kappa2);
  A(0, 0) = Real(1) - 2 * kappa1 * M(1, 1) / det;
  A(0, 1) = cross * M(0, 1) / det;
  A(1, 0) = cross * M(1, 0) / det;
  A(1, 1) = Real(1) - 2 * kappa2 * M(0, 0) / det;
  return A;
}

// Noise power of the current from the scattering matrices at +w and -w. The
// current is expanded over the vacuum inputs with a^dag(w) = [a(-w)]^dag and
// <a_in(w) a_in^dag(w')> = delta(w + w'); the result is normalized so the
// uncoupled vacuum gives exactly 1.
template <typename Real>
Real spectrum_from_scattering(const Matrix2c<Real>& Ap, const Matrix2c<Real>& Am,
                              Real theta, QuadratureSign sign) {
  const auto wt = current_weights<Real>(theta, sign);
  // coefficients of a1_in(w), a2_in(w)-conjugate pair at +w and the partners
  // they contract with at -w
  const Complex<Real> c1 = wt.w1 * Ap(0, 0) + wt.w4 * Ap(1, 0);
  const Complex<Real> c2m = wt.w2 * std::conj(Ap(0, 0)) + wt.w3 * std::conj(Ap(1, 0));
  const Complex<Real> c3 = wt.w2 * std::conj(Am(0, 1)) + wt.w3 * std::conj(Am(1, 1));
  const Complex<Real> c4m = wt.w1 * Am(0, 1) + wt.w4 * Am(1, 1);

  const Real raw = std::real(c1 * c2m + c3 * c4m);
  const Real vacuum = std::real(wt.w1 * wt.w2 + wt.w3 * wt.w4);
  return raw / vacuum;
}

}  // namespace detail

/// Solves the linearized intracavity equations in the frequency domain.
/// The undamped, noise-free collective mode is eliminated exactly,
/// b(w) = sqrt(N) (g1 a1(w) + g2 a2^dag(w)) / (omega' - w), leaving a 2x2
/// complex system M x = -D u with D = diag(sqrt(2 k1), sqrt(2 k2)) and
///   M11 = k1 - i w - i g1^2 N/(omega'-w)   M12 = -i g1 g2 N/(omega'-w)
///   M21 = +i g1 g2 N/(omega'-w)            M22 = k2 - i w + i g2^2 N/(omega'-w).
/// The output relation a_out = a_in + sqrt(2k) a gives A = 1 - D M^-1 D.
template <typename Real>
ScatteringMatrix<Real> scattering_matrix(const EffectiveParams<Real>& e,
                                         Real omega,
                                         const ScatteringOptions& opts = {}) {
  if (std::abs(omega - e.omega_prime) <=
      Real(opts.pole_guard_rel) * std::abs(e.omega_prime))
    throw std::domain_error("frequency inside the collective-mode pole guard");
  const Complex<Real> I(0, 1);
  const Real f = e.n_atoms / (e.omega_prime - omega);
  const Real s = static_cast<Real>(opts.off_diag_sign);
  Matrix2c<Real> M;
  M(0, 0) = e.kappa1 - I * omega - I * (e.g1 * e.g1 * f);
  M(0, 1) = -I * (e.g1 * e.g2 * f);
  M(1, 0) = +I * s * (e.g1 * e.g2 * f);
  M(1, 1) = e.kappa2 - I * omega + I * (e.g2 * e.g2 * f);

  ScatteringMatrix<Real> out;
  out.omega = omega;
  out.A = detail::scattering_from_drift(M, e.kappa1, e.kappa2);
  if (opts.alternate_input_sign) out.A = -out.A;

  const Complex<Real> det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
  const Real norm1 = std::max(std::abs(M(0, 0)) + std::abs(M(1, 0)),
                              std::abs(M(0, 1)) + std::abs(M(1, 1)));
  const Real inv1 = std::max(std::abs(M(1, 1)) + std::abs(M(1, 0)),
                             std::abs(M(0, 1)) + std::abs(M(0, 0))) /
                    std::abs(det);
  out.condition_number = norm1 * inv1;
  return out;
}


/// Noise power of the joint quadrature current at frequency omega.
template <typename Real>
Real squeezing_at(const EffectiveParams<Real>& e, Real theta, Real omega,
                  QuadratureSign sign = QuadratureSign::plus,
                  const ScatteringOptions& opts = {}) {
  const Matrix2c<Real> Ap = scattering_matrix(e, omega, opts).A;
  const Matrix2c<Real> Am = scattering_matrix(e, -omega, opts).A;
  return detail::spectrum_from_scattering(Ap, Am, theta, sign);
}

/// Dispersive-regime approximation of the theta = 0 spectrum for symmetric
/// decay kappa1 = kappa2 = kappa:
///   S(w) ~= 1 + 4 k^2 E / ((k^2+w^2)^2 (w'^2-w^2))
///             * [ 4 w w' (k^2-w^2)/(k^2+w^2) + E (w'^2+w^2)/(w'^2-w^2) ]
/// with E = g1 g2 N.
template <typename Real>
Real approx_squeezing_at(const EffectiveParams<Real>& e, Real omega) {
  const Real rel = std::abs(e.kappa1) > Real(0)
                       ? std::abs(e.kappa1 - e.kappa2) / std::abs(e.kappa1)
                       : std::abs(e.kappa2);
  if (rel > Real(1e-12))
    throw std::invalid_argument("approximation requires kappa1 == kappa2");
  if (omega * omega >= e.omega_prime * e.omega_prime)
    throw std::domain_error("approximation domain requires |omega| < omega'");
  const Real k = e.kappa1;
  const Real wp = e.omega_prime;
  const Real E = e.g1 * e.g2 * e.n_atoms;
  const Real k2w2 = k * k + omega * omega;
  const Real wp2w2 = wp * wp - omega * omega;
  const Real pre = 4 * k * k * E / (k2w2 * k2w2 * wp2w2);
  const Real bracket = 4 * omega * wp * (k * k - omega * omega) / k2w2 +
                       E * (wp * wp + omega * omega) / wp2w2;
  return Real(1) + pre * bracket;
}

/// A spectrum over a frequency grid; s_approx is filled when requested and
/// applicable.
template <typename Real>
struct SpectrumCurve {
  Real theta = 0;
  VectorX<Real> omega;
  VectorX<Real> s_plus;
  VectorX<Real> s_minus;
  VectorX<Real> s_approx;  // empty unless requested
  EffectiveParams<Real> params;

  bool has_approx() const { return s_approx.size() == omega.size(); }
};

template <typename Real>
SpectrumCurve<Real> squeezing_spectrum(const EffectiveParams<Real>& e,
                                       Real theta, const VectorX<Real>& grid,
                                       bool include_approx = false,
                                       const ScatteringOptions& opts = {}) {
  if (grid.size() == 0) throw std::invalid_argument("empty frequency grid");
  SpectrumCurve<Real> c;
  c.theta = theta;
  c.omega = grid;
  c.params = e;
  c.s_plus.resize(grid.size());
  c.s_minus.resize(grid.size());
  if (include_approx) c.s_approx.resize(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    c.s_plus(i) = squeezing_at(e, theta, grid(i), QuadratureSign::plus, opts);
    c.s_minus(i) = squeezing_at(e, theta, grid(i), QuadratureSign::minus, opts);
    if (include_approx) c.s_approx(i) = approx_squeezing_at(e, grid(i));
  }
  return c;
}

/// Evaluates only the dispersive approximation on a grid.
template <typename Real>
SpectrumCurve<Real> approx_spectrum(const EffectiveParams<Real>& e,
                                    const VectorX<Real>& grid) {
  if (grid.size() == 0) throw std::invalid_argument("empty frequency grid");
  SpectrumCurve<Real> c;
  c.theta = 0;
  c.omega = grid;
  c.params = e;
  c.s_plus.resize(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    c.s_plus(i) = approx_squeezing_at(e, grid(i));
  c.s_minus = c.s_plus;
  return c;
}

/// Sub-unity squeezing certifies entanglement of the two output beams.
template <typename Real>
struct EntanglementVerdict {
  Real min_s = 1;
  Real omega_min = 0;
  Real window_lo = 0;   // contiguous S < 1 window containing the minimum
  Real window_hi = 0;
  bool has_window = false;
  bool entangled = false;
  Real tolerance = Real(1e-9);
};

template <typename Real>
EntanglementVerdict<Real> verdict(const SpectrumCurve<Real>& curve,
                                  Real tolerance = Real(1e-9)) {
  if (curve.omega.size() == 0) throw std::invalid_argument("empty curve");
  EntanglementVerdict<Real> v;
  v.tolerance = tolerance;
  Eigen::Index imin = 0;
  v.min_s = curve.s_plus.minCoeff(&imin);
  v.omega_min = curve.omega(imin);
  v.entangled = v.min_s < Real(1) - tolerance;
  if (v.entangled) {
    Eigen::Index lo = imin, hi = imin;
    while (lo > 0 && curve.s_plus(lo - 1) < Real(1)) --lo;
    while (hi + 1 < curve.omega.size() && curve.s_plus(hi + 1) < Real(1)) ++hi;
    v.window_lo = curve.omega(lo);
    v.window_hi = curve.omega(hi);
    v.has_window = true;
  }
  return v;
}

}  // namespace twinbeam

#endif
