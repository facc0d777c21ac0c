#ifndef TWINBEAM_FOCK_HPP
#define TWINBEAM_FOCK_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "twinbeam/expm.hpp"
#include "twinbeam/params.hpp"
#include "twinbeam/su11.hpp"
#include "twinbeam/types.hpp"

namespace twinbeam {

/// Pure state of the two cavity modes on a truncated photon-number grid.
/// amplitudes(m, n) = <m, n | psi>. Column-major flattening m + n * (n1_max+1)
/// is used whenever the state is viewed as a vector.
template <typename Real>
struct TwoModeState {
  MatrixXc<Real> amplitudes;
  Real tail_mass = 0;      // probability weight on the truncation boundary
  bool converged = true;   // tail_mass below the requested threshold

  int n1_max() const { return static_cast<int>(amplitudes.rows()) - 1; }
  int n2_max() const { return static_cast<int>(amplitudes.cols()) - 1; }
  Real norm_squared() const { return amplitudes.squaredNorm(); }
};

/// Pure state of (mode 1, mode 2, collective mode b); flat index
/// m + d1 * (n + d2 * k) with k the b occupation.
template <typename Real>
struct ThreeModeState {
  VectorXc<Real> amplitudes;
  int n1_max = 0, n2_max = 0, nb_max = 0;
  Real tail1 = 0, tail2 = 0, tail_b = 0;
  bool converged = true;

  Eigen::Index index(int m, int n, int k) const {
    return m + (n1_max + 1) * (static_cast<Eigen::Index>(n) +
                               (n2_max + 1) * static_cast<Eigen::Index>(k));
  }
  Real norm_squared() const { return amplitudes.squaredNorm(); }
};

/// Reduced density operator over the two cavity modes, indexed by the same
/// flattened pair index as TwoModeState.
template <typename Real>
struct TwoModeDensity {
  MatrixXc<Real> rho;
  int n1_max = 0, n2_max = 0;
};

// ---------------------------------------------------------------------------
// Hamiltonians on the truncated grids
// ---------------------------------------------------------------------------

/// Dispersive pair Hamiltonian of the two cavity modes after elimination of
/// the collective mode:
///   H = -[chi1 a1^dag a1 + chi2 a2 a2^dag + chi (a1^dag a2^dag + a1 a2)].
/// Built on the full (n_max+1)^2 grid; the pair structure of the dynamics is
/// a property of the matrix, not an imposed constraint.
template <typename Real>
SparseMatrixc<Real> pair_hamiltonian(const EffectiveParams<Real>& e, int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  const int d = n_max + 1;
  const Eigen::Index dim = static_cast<Eigen::Index>(d) * d;
  std::vector<Eigen::Triplet<Complex<Real>>> trip;
  trip.reserve(3 * dim);
  auto idx = [d](int m, int n) { return static_cast<Eigen::Index>(m) + n * d; };
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      trip.emplace_back(idx(m, n), idx(m, n),
                        -(e.chi1 * m + e.chi2 * (n + 1)));
      if (m + 1 < d && n + 1 < d) {
        const Real v = -e.chi * std::sqrt(Real(m + 1) * Real(n + 1));
        trip.emplace_back(idx(m + 1, n + 1), idx(m, n), v);
        trip.emplace_back(idx(m, n), idx(m + 1, n + 1), v);
      }
    }
  }
  SparseMatrixc<Real> H(dim, dim);
  H.setFromTriplets(trip.begin(), trip.end());
  return H;
}

/// Three-mode Hamiltonian with the collective mode kept dynamical:
///   H = omega' b^dag b - sqrt(N) [g1 (a1 b^dag + a1^dag b)
///                                 + g2 (a2^dag b^dag + a2 b)].
template <typename Real>
SparseMatrixc<Real> three_mode_hamiltonian(const EffectiveParams<Real>& e,
                                           int n1_max, int n2_max, int nb_max) {
  if (n1_max < 1 || n2_max < 1 || nb_max < 1)
    throw std::invalid_argument("truncations must be >= 1");
  const int d1 = n1_max + 1, d2 = n2_max + 1, db = nb_max + 1;
  const Eigen::Index dim = static_cast<Eigen::Index>(d1) * d2 * db;
  const Real rtn = std::sqrt(e.n_atoms);
  std::vector<Eigen::Triplet<Complex<Real>>> trip;
  trip.reserve(5 * dim);
  auto idx = [d1, d2](int m, int n, int k) {
    return static_cast<Eigen::Index>(m) +
           d1 * (static_cast<Eigen::Index>(n) + static_cast<Eigen::Index>(d2) * k);
  };
  for (int m = 0; m < d1; ++m) {
    for (int n = 0; n < d2; ++n) {
      for (int k = 0; k < db; ++k) {
        const auto i = idx(m, n, k);
        trip.emplace_back(i, i, e.omega_prime * Real(k));
        if (m - 1 >= 0 && k + 1 < db) {  // a1 b^dag
          const Real v = -rtn * e.g1 * std::sqrt(Real(m) * Real(k + 1));
          trip.emplace_back(idx(m - 1, n, k + 1), i, v);
          trip.emplace_back(i, idx(m - 1, n, k + 1), v);
        }
        if (n + 1 < d2 && k + 1 < db) {  // a2^dag b^dag
          const Real v = -rtn * e.g2 * std::sqrt(Real(n + 1) * Real(k + 1));
          trip.emplace_back(idx(m, n + 1, k + 1), i, v);
          trip.emplace_back(i, idx(m, n + 1, k + 1), v);
        }
      }
    }
  }
  SparseMatrixc<Real> H(dim, dim);
  H.setFromTriplets(trip.begin(), trip.end());
  return H;
}

// ---------------------------------------------------------------------------
// Evolutions
// ---------------------------------------------------------------------------

/// Smallest truncation with geometric tail |Gamma|^(2 n_max) below threshold.
template <typename Real>
int pair_truncation_for(const EffectiveParams<Real>& e, Real tau,
                        Real threshold = Real(1e-12), int n_cap = 512) {
  const Real a = std::abs(su11_coefficients(e, tau).Gamma);
  if (a <= Real(0)) return 1;
  const int n = static_cast<int>(
      std::ceil(std::log(threshold) / (Real(2) * std::log(a))));
  return std::clamp(n, 1, n_cap);
}

/// Pair state from the factorized propagator: amplitudes Gt^(1/2) Gamma^n on
/// |n, n>, renormalized over the kept grid. Tail mass is the geometric weight
/// beyond the truncation, |Gamma|^(2 n_max).
template <typename Real>
TwoModeState<Real> evolve_closed_form(const EffectiveParams<Real>& e, Real tau,
                                      int n_max,
                                      Real tail_threshold = Real(1e-12)) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  const auto co = su11_coefficients(e, tau);
  TwoModeState<Real> st;
  st.amplitudes = MatrixXc<Real>::Zero(n_max + 1, n_max + 1);
  const Complex<Real> pref = std::sqrt(co.Gamma_tilde);
  Complex<Real> amp = pref;
  for (int n = 0; n <= n_max; ++n) {
    st.amplitudes(n, n) = amp;
    amp *= co.Gamma;
  }
  st.amplitudes /= std::sqrt(st.amplitudes.squaredNorm());
  st.tail_mass = std::pow(std::abs(co.Gamma), Real(2 * n_max));
  st.converged = st.tail_mass < tail_threshold;
  return st;
}

/// Independent route: exp(-i H tau) |0,0> on the full truncated grid.
template <typename Real>
TwoModeState<Real> evolve_numeric(const EffectiveParams<Real>& e, Real tau,
                                  int n_max, Real tail_threshold = Real(1e-12)) {
  if (tau < Real(0)) throw std::invalid_argument("tau must be >= 0");
  const auto H = pair_hamiltonian(e, n_max);
  const int d = n_max + 1;
  VectorXc<Real> v = VectorXc<Real>::Zero(static_cast<Eigen::Index>(d) * d);
  v(0) = Real(1);
  v = expm_apply(H, v, Complex<Real>(0, -tau));
  TwoModeState<Real> st;
  st.amplitudes = Eigen::Map<const MatrixXc<Real>>(v.data(), d, d);
  Real tail = 0;
  for (int m = 0; m < d; ++m) tail += std::norm(st.amplitudes(m, d - 1));
  for (int n = 0; n + 1 < d; ++n) tail += std::norm(st.amplitudes(d - 1, n));
  st.tail_mass = tail;
  st.converged = tail < tail_threshold;
  return st;
}

/// exp(-i H tau) |0,0,0> with the collective mode kept dynamical.
template <typename Real>
ThreeModeState<Real> evolve_three_mode(const EffectiveParams<Real>& e, Real tau,
                                       int n1_max, int n2_max, int nb_max,
                                       Real tail_threshold = Real(1e-12)) {
  if (!std::isfinite(e.omega_prime))
    throw std::invalid_argument("omega_prime must be finite");
  const auto H = three_mode_hamiltonian(e, n1_max, n2_max, nb_max);
  ThreeModeState<Real> st;
  st.n1_max = n1_max;
  st.n2_max = n2_max;
  st.nb_max = nb_max;
  VectorXc<Real> v = VectorXc<Real>::Zero(H.rows());
  v(0) = Real(1);
  st.amplitudes = expm_apply(H, v, Complex<Real>(0, -tau));
  st.tail1 = st.tail2 = st.tail_b = 0;
  for (int m = 0; m <= n1_max; ++m)
    for (int n = 0; n <= n2_max; ++n)
      for (int k = 0; k <= nb_max; ++k) {
        const Real p = std::norm(st.amplitudes(st.index(m, n, k)));
        if (m == n1_max) st.tail1 += p;
        if (n == n2_max) st.tail2 += p;
        if (k == nb_max) st.tail_b += p;
      }
  st.converged = std::max({st.tail1, st.tail2, st.tail_b}) < tail_threshold;
  return st;
}

/// Partial trace over the collective mode.
template <typename Real>
TwoModeDensity<Real> reduce_to_two_modes(const ThreeModeState<Real>& s) {
  const int d1 = s.n1_max + 1, d2 = s.n2_max + 1;
  const Eigen::Index dp = static_cast<Eigen::Index>(d1) * d2;
  TwoModeDensity<Real> out;
  out.n1_max = s.n1_max;
  out.n2_max = s.n2_max;
  out.rho = MatrixXc<Real>::Zero(dp, dp);
  for (int k = 0; k <= s.nb_max; ++k) {
    // slice at fixed b occupation is contiguous: index m + d1*n + d1*d2*k
    Eigen::Map<const VectorXc<Real>> slice(s.amplitudes.data() + dp * k, dp);
    out.rho.noalias() += slice * slice.adjoint();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Measures
// ---------------------------------------------------------------------------

/// p_n = |<n, n|psi>|^2.
template <typename Real>
VectorX<Real> pair_distribution(const TwoModeState<Real>& s) {
  const int d = std::min(s.n1_max(), s.n2_max()) + 1;
  VectorX<Real> p(d);
  for (int n = 0; n < d; ++n) p(n) = std::norm(s.amplitudes(n, n));
  return p;
}

/// Entropy of the pair distribution in nats; equals the reduced-state von
/// Neumann entropy for a pair-correlated pure state.
template <typename Real>
Real entanglement_entropy(const TwoModeState<Real>& s) {
  const VectorX<Real> p = pair_distribution(s);
  Real h = 0;
  for (int n = 0; n < p.size(); ++n)
    if (p(n) > Real(0)) h -= p(n) * std::log(p(n));
  return h;
}

/// Probability weight outside the |n, n> ladder.
template <typename Real>
Real off_pair_mass(const TwoModeState<Real>& s) {
  Real off = 0;
  for (int m = 0; m <= s.n1_max(); ++m)
    for (int n = 0; n <= s.n2_max(); ++n)
      if (m != n) off += std::norm(s.amplitudes(m, n));
  return off;
}

/// <n1 - n2>.
template <typename Real>
Real photon_number_difference(const TwoModeState<Real>& s) {
  Real v = 0;
  for (int m = 0; m <= s.n1_max(); ++m)
    for (int n = 0; n <= s.n2_max(); ++n)
      v += Real(m - n) * std::norm(s.amplitudes(m, n));
  return v;
}

/// Mean and variance of the conserved charge C = n_b + n1 - n2.
template <typename Real>
void charge_moments(const ThreeModeState<Real>& s, Real& mean, Real& variance) {
  mean = 0;
  Real second = 0;
  for (int m = 0; m <= s.n1_max; ++m)
    for (int n = 0; n <= s.n2_max; ++n)
      for (int k = 0; k <= s.nb_max; ++k) {
        const Real p = std::norm(s.amplitudes(s.index(m, n, k)));
        const Real c = Real(k + m - n);
        mean += c * p;
        second += c * c * p;
      }
  variance = second - mean * mean;
}

/// |<s1|s2>|^2 for pure states; mismatched truncations are zero-padded.
template <typename Real>
Real fidelity(const TwoModeState<Real>& s1, const TwoModeState<Real>& s2) {
  const int r = std::min(s1.n1_max(), s2.n1_max()) + 1;
  const int c = std::min(s1.n2_max(), s2.n2_max()) + 1;
  const Complex<Real> ov = (s1.amplitudes.topLeftCorner(r, c).conjugate()
                                .cwiseProduct(s2.amplitudes.topLeftCorner(r, c)))
                               .sum();
  return std::norm(ov);
}

/// <psi|rho|psi>; exact fidelity when one argument is pure.
template <typename Real>
Real fidelity(const TwoModeDensity<Real>& rho, const TwoModeState<Real>& psi) {
  const int d1 = rho.n1_max + 1, d2 = rho.n2_max + 1;
  VectorXc<Real> v = VectorXc<Real>::Zero(static_cast<Eigen::Index>(d1) * d2);
  for (int m = 0; m <= std::min(rho.n1_max, psi.n1_max()); ++m)
    for (int n = 0; n <= std::min(rho.n2_max, psi.n2_max()); ++n)
      v(m + static_cast<Eigen::Index>(d1) * n) = psi.amplitudes(m, n);
  return std::real(Complex<Real>(v.adjoint() * rho.rho * v));
}

}  // namespace twinbeam

#endif
