#ifndef TWINBEAM_PARAMS_HPP
#define TWINBEAM_PARAMS_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace twinbeam {

/// Raw experimental quantities of the pumped cavity-condensate setup.
/// All rates share one unit, carried along as a label ("MHz", "g", ...).
template <typename Real>
struct PhysicalParams {
  Real lambda1 = 0;   // atom-cavity coupling, mode 1
  Real lambda2 = 0;   // atom-cavity coupling, mode 2
  Real rabi1 = 0;     // pump Rabi frequency driving the |1>-|3> leg
  Real rabi2 = 0;     // pump Rabi frequency driving the |2>-|3> leg
  Real delta = 0;     // pump detuning from the upper level
  Real omega21 = 0;   // splitting between the two lower levels
  Real nu = 0;        // half mode splitting, cavity modes at pump +/- nu
  Real kappa1 = 0;    // cavity decay rate, mode 1
  Real kappa2 = 0;    // cavity decay rate, mode 2
  long long n_atoms = 0;
  std::string unit = "g";
};

/// Model-level parameters. Everything downstream consumes these only;
/// chi1, chi2, chi are derived and kept consistent by the factories below.
template <typename Real>
struct EffectiveParams {
  Real g1 = 0;           // effective Raman coupling, mode 1
  Real g2 = 0;           // effective Raman coupling, mode 2
  Real omega_prime = 0;  // collective-mode frequency, > 0
  Real kappa1 = 0;
  Real kappa2 = 0;
  Real n_atoms = 0;      // real-valued so sweeps can treat it as continuous
  std::string unit = "g";

  Real chi1 = 0;  // g1^2 N / omega'
  Real chi2 = 0;  // g2^2 N / omega'
  Real chi = 0;   // g1 g2 N / omega'
};

template <typename Real>
struct RegimeCheck {
  std::string name;
  std::string inequality;  // human-readable statement of what is compared
  Real lhs = 0;            // large side
  Real rhs = 0;            // small side
  Real ratio = 0;          // lhs / rhs, +inf when rhs == 0
  Real margin = 0;
  bool pass = false;
};

template <typename Real>
struct RegimeReport {
  Real margin = 10;
  std::vector<RegimeCheck<Real>> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

template <typename Real>
RegimeCheck<Real> make_check(std::string name, std::string inequality, Real lhs,
                             Real rhs, Real margin) {
  RegimeCheck<Real> c;
  c.name = std::move(name);
  c.inequality = std::move(inequality);
  c.lhs = lhs;
  c.rhs = rhs;
  c.ratio = rhs == Real(0) ? std::numeric_limits<Real>::infinity() : lhs / rhs;
  c.margin = margin;
  c.pass = c.ratio >= margin;
  return c;
}

}  // namespace detail

/// Populates the chi fields from g1, g2, n_atoms, omega_prime.
template <typename Real>
EffectiveParams<Real> effective_from_direct(Real g1, Real g2, Real omega_prime,
                                            Real kappa1, Real kappa2,
                                            Real n_atoms,
                                            std::string unit = "g") {
  if (!(omega_prime > Real(0)))
    throw std::domain_error("effective oscillator frequency not positive");
  if (n_atoms < Real(0)) throw std::invalid_argument("n_atoms must be >= 0");
  if (kappa1 < Real(0) || kappa2 < Real(0))
    throw std::invalid_argument("cavity decay rates must be >= 0");
  EffectiveParams<Real> e;
  e.g1 = g1;
  e.g2 = g2;
  e.omega_prime = omega_prime;
  e.kappa1 = kappa1;
  e.kappa2 = kappa2;
  e.n_atoms = n_atoms;
  e.unit = std::move(unit);
  e.chi1 = g1 * g1 * n_atoms / omega_prime;
  e.chi2 = g2 * g2 * n_atoms / omega_prime;
  e.chi = g1 * g2 * n_atoms / omega_prime;
  return e;
}

/// Two-photon Raman reduction of the physical parameters:
///   g_j = lambda_j Omega_j / Delta,  omega' = omega21 + (O1^2 - O2^2)/Delta - nu.
template <typename Real>
EffectiveParams<Real> derive_effective(const PhysicalParams<Real>& p) {
  if (p.delta == Real(0)) throw std::domain_error("pump detuning must be nonzero");
  if (p.n_atoms < 1) throw std::invalid_argument("n_atoms must be >= 1");
  for (Real r : {p.lambda1, p.lambda2, p.rabi1, p.rabi2, p.delta, p.omega21,
                 p.nu, p.kappa1, p.kappa2}) {
    if (!std::isfinite(r)) throw std::invalid_argument("non-finite rate input");
  }
  const Real g1 = p.lambda1 * p.rabi1 / p.delta;
  const Real g2 = p.lambda2 * p.rabi2 / p.delta;
  const Real omega_tilde =
      p.omega21 + (p.rabi1 * p.rabi1 - p.rabi2 * p.rabi2) / p.delta;
  const Real omega_prime = omega_tilde - p.nu;
  if (!(omega_prime > Real(0)))
    throw std::domain_error("effective oscillator frequency not positive");
  return effective_from_direct<Real>(g1, g2, omega_prime, p.kappa1, p.kappa2,
                                     static_cast<Real>(p.n_atoms), p.unit);
}

/// Checks that only need the effective parameters: low-excitation validity
/// omega' >> g_j sqrt(N) and the dispersive-expansion ratio omega' / (g1 g2 N).
template <typename Real>
RegimeReport<Real> validate_regimes(const EffectiveParams<Real>& e,
                                    Real margin = Real(10)) {
  RegimeReport<Real> rep;
  rep.margin = margin;
  const Real rtn = std::sqrt(e.n_atoms);
  const Real gmax = std::max(std::abs(e.g1), std::abs(e.g2));
  rep.checks.push_back(detail::make_check<Real>(
      "low_excitation", "omega' >> g_j sqrt(N)", e.omega_prime, gmax * rtn,
      margin));
  rep.checks.push_back(detail::make_check<Real>(
      "dispersive_expansion", "omega' >> g1 g2 N", e.omega_prime,
      std::abs(e.g1 * e.g2) * e.n_atoms, margin));
  return rep;
}

/// Full report: adds the adiabatic-elimination check Delta >> Omega_j, lambda_j
/// that only makes sense for the physical pathway.
template <typename Real>
RegimeReport<Real> validate_regimes(const PhysicalParams<Real>& p,
                                    const EffectiveParams<Real>& e,
                                    Real margin = Real(10)) {
  RegimeReport<Real> rep = validate_regimes(e, margin);
  const Real drive = std::max({std::abs(p.rabi1), std::abs(p.rabi2),
                               std::abs(p.lambda1), std::abs(p.lambda2)});
  rep.checks.insert(rep.checks.begin(),
                    detail::make_check<Real>("adiabatic_elimination",
                                             "Delta >> Omega_j, lambda_j",
                                             std::abs(p.delta), drive, margin));
  return rep;
}

}  // namespace twinbeam

#endif
