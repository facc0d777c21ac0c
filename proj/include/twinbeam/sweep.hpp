#ifndef TWINBEAM_SWEEP_HPP
#define TWINBEAM_SWEEP_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <stdexcept>
#include <string>
#include <vector>

#include "twinbeam/params.hpp"
#include "twinbeam/spectrum.hpp"
#include "twinbeam/types.hpp"

namespace twinbeam {

template <typename Real>
struct MinimizeOptions {
  Real window_lo = 0;        // 0/0 means: use -10 max(kappa, g) .. 0
  Real window_hi = 0;
  int scan_points = 2001;    // coarse seeding grid
  Real omega_tol = Real(1e-8);
  Real entangled_tol = Real(1e-9);
  ScatteringOptions scattering{};
};

template <typename Real>
struct MinSqueezing {
  Real omega_min = 0;
  Real s_min = 1;
  bool entangled = false;
  bool flat = false;  // no sub-unity value anywhere on the window
};

/// Bracketed minimum of S^theta(w) over a window: coarse deterministic scan,
/// then golden-section refinement around the best grid point.
template <typename Real>
MinSqueezing<Real> min_squeezing(const EffectiveParams<Real>& e, Real theta,
                                 QuadratureSign sign = QuadratureSign::plus,
                                 MinimizeOptions<Real> opts = {}) {
  Real lo = opts.window_lo, hi = opts.window_hi;
  if (lo == Real(0) && hi == Real(0)) {
    const Real scale = std::max({std::abs(e.kappa1), std::abs(e.kappa2),
                                 std::abs(e.g1), std::abs(e.g2), Real(1)});
    lo = -10 * scale;
    hi = 0;
  }
  if (!(lo < hi)) throw std::invalid_argument("invalid search window");
  const int n = std::max(opts.scan_points, 3);
  auto S = [&](Real w) {
    return squeezing_at(e, theta, w, sign, opts.scattering);
  };

  Eigen::Index best = 0;
  Real best_s = std::numeric_limits<Real>::infinity();
  const Real step = (hi - lo) / Real(n - 1);
  for (int i = 0; i < n; ++i) {
    const Real s = S(lo + step * i);
    if (s < best_s) {
      best_s = s;
      best = i;
    }
  }

  Real a = lo + step * std::max<Eigen::Index>(best - 1, 0);
  Real b = lo + step * std::min<Eigen::Index>(best + 1, n - 1);
  const Real invphi = Real(0.5) * (std::sqrt(Real(5)) - 1);
  Real x1 = b - invphi * (b - a);
  Real x2 = a + invphi * (b - a);
  Real f1 = S(x1), f2 = S(x2);
  while (b - a > opts.omega_tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = S(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = S(x2);
    }
  }
  MinSqueezing<Real> r;
  r.omega_min = Real(0.5) * (a + b);
  r.s_min = std::min({S(r.omega_min), f1, f2, best_s});
  r.entangled = r.s_min < Real(1) - opts.entangled_tol;
  r.flat = !r.entangled;
  return r;
}

template <typename Real>
struct SweepRecord {
  Real value = 0;  // swept kappa or atom number
  Real omega_min = 0;
  Real s_min = 1;
  bool entangled = false;
  bool low_excitation_ok = true;  // omega' / (g sqrt{N}) >= 10
  double wall_ms = 0;
};

template <typename Real>
struct SweepResult {
  std::string parameter;  // "kappa" or "n_atoms"
  Real theta = 0;
  std::vector<SweepRecord<Real>> records;
};

namespace detail {

template <typename Real, typename MakeParams>
SweepResult<Real> run_sweep(const std::string& name, Real theta,
                            const std::vector<Real>& grid, MakeParams&& make,
                            QuadratureSign sign, MinimizeOptions<Real> opts,
                            int workers) {
  SweepResult<Real> out;
  out.parameter = name;
  out.theta = theta;
  out.records.resize(grid.size());
  auto eval = [&](std::size_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    const EffectiveParams<Real> e = make(grid[i]);
    const auto m = min_squeezing(e, theta, sign, opts);
    SweepRecord<Real> rec;
    rec.value = grid[i];
    rec.omega_min = m.omega_min;
    rec.s_min = m.s_min;
    rec.entangled = m.entangled;
    const Real gmax = std::max(std::abs(e.g1), std::abs(e.g2));
    const Real excitation = gmax * std::sqrt(std::max(e.n_atoms, Real(0)));
    rec.low_excitation_ok =
        excitation == Real(0) || e.omega_prime / excitation >= Real(10);
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    out.records[i] = rec;
  };
  if (workers <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) eval(i);
  } else {
    std::vector<std::future<void>> futs;
    futs.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
      futs.push_back(std::async(std::launch::async, eval, i));
    for (auto& f : futs) f.get();  // records land in grid order regardless
  }
  return out;
}

}  // namespace detail

/// Minimum squeezing versus symmetric cavity decay, all else held fixed.
template <typename Real>
SweepResult<Real> sweep_kappa(const EffectiveParams<Real>& base,
                              const std::vector<Real>& kappa_grid, Real theta,
                              QuadratureSign sign = QuadratureSign::plus,
                              MinimizeOptions<Real> opts = {}, int workers = 1) {
  for (Real k : kappa_grid)
    if (!(k > Real(0))) throw std::invalid_argument("kappa values must be > 0");
  return detail::run_sweep<Real>(
      "kappa", theta, kappa_grid,
      [&](Real k) {
        return effective_from_direct<Real>(base.g1, base.g2, base.omega_prime,
                                           k, k, base.n_atoms, base.unit);
      },
      sign, opts, workers);
}

/// Minimum squeezing versus atom number.
template <typename Real>
SweepResult<Real> sweep_atoms(const EffectiveParams<Real>& base,
                              const std::vector<Real>& n_grid, Real theta,
                              QuadratureSign sign = QuadratureSign::plus,
                              MinimizeOptions<Real> opts = {}, int workers = 1) {
  for (Real n : n_grid)
    if (n < Real(0)) throw std::invalid_argument("atom numbers must be >= 0");
  return detail::run_sweep<Real>(
      "n_atoms", theta, n_grid,
      [&](Real n) {
        return effective_from_direct<Real>(base.g1, base.g2, base.omega_prime,
                                           base.kappa1, base.kappa2, n,
                                           base.unit);
      },
      sign, opts, workers);
}

template <typename Real>
struct ApproxComparison {
  VectorX<Real> omega;
  VectorX<Real> s_exact;
  VectorX<Real> s_approx;
  VectorX<Real> abs_dev;
  Real max_dev = 0;
  Real mean_dev = 0;
};

/// Exact theta = 0 spectrum against the dispersive approximation.
template <typename Real>
ApproxComparison<Real> compare_approx(const EffectiveParams<Real>& e,
                                      const VectorX<Real>& grid,
                                      const ScatteringOptions& opts = {}) {
  if (grid.size() == 0) throw std::invalid_argument("empty frequency grid");
  ApproxComparison<Real> c;
  c.omega = grid;
  c.s_exact.resize(grid.size());
  c.s_approx.resize(grid.size());
  c.abs_dev.resize(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    c.s_exact(i) = squeezing_at(e, Real(0), grid(i), QuadratureSign::plus, opts);
    c.s_approx(i) = approx_squeezing_at(e, grid(i));
    c.abs_dev(i) = std::abs(c.s_exact(i) - c.s_approx(i));
  }
  c.max_dev = c.abs_dev.maxCoeff();
  c.mean_dev = c.abs_dev.mean();
  return c;
}

}  // namespace twinbeam

#endif
