#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "csvio.hpp"
#include "twinbeam/fock.hpp"
#include "twinbeam/spectrum.hpp"
#include "twinbeam/su11.hpp"
#include "twinbeam/sweep.hpp"

namespace twinbeam {

namespace {

using io::comment;
using io::format_number;
using json = nlohmann::json;

VectorX<double> linspace(double lo, double hi, int n) {
  VectorX<double> v(n);
  if (n == 1) {
    v(0) = lo;
    return v;
  }
  const double step = (hi - lo) / double(n - 1);
  for (int i = 0; i < n; ++i) v(i) = lo + step * i;
  return v;
}

// Routes command output to cfg.out_path when set, else to the given stream.
class OutputTarget {
 public:
  OutputTarget(const RunConfig& cfg, std::ostream& fallback) {
    if (!cfg.out_path.empty()) {
      file_ = std::make_unique<std::ofstream>(cfg.out_path);
      if (!*file_) throw ConfigError("cannot write output file: " + cfg.out_path);
      os_ = file_.get();
    } else {
      os_ = &fallback;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

void echo_effective(std::ostream& os, const EffectiveParams<double>& e) {
  comment(os, "unit", e.unit);
  comment(os, "g1", e.g1);
  comment(os, "g2", e.g2);
  comment(os, "omega_prime", e.omega_prime);
  comment(os, "kappa1", e.kappa1);
  comment(os, "kappa2", e.kappa2);
  comment(os, "n_atoms", e.n_atoms);
  comment(os, "chi1", e.chi1);
  comment(os, "chi2", e.chi2);
  comment(os, "chi", e.chi);
}

json effective_to_json(const EffectiveParams<double>& e) {
  return json{{"unit", e.unit},     {"g1", e.g1},         {"g2", e.g2},
              {"omega_prime", e.omega_prime}, {"kappa1", e.kappa1},
              {"kappa2", e.kappa2}, {"n_atoms", e.n_atoms}, {"chi1", e.chi1},
              {"chi2", e.chi2},     {"chi", e.chi}};
}

json regime_to_json(const RegimeReport<double>& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back(json{{"name", c.name},
                          {"inequality", c.inequality},
                          {"lhs", c.lhs},
                          {"rhs", c.rhs},
                          {"ratio", c.ratio},
                          {"margin", c.margin},
                          {"pass", c.pass}});
  return json{{"margin", rep.margin}, {"checks", checks}};
}

json complex_to_json(const std::complex<double>& z) {
  return json{{"re", z.real()}, {"im", z.imag()}};
}

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

}  // namespace

int cmd_params(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const auto e = resolve_effective(cfg);
    const RegimeReport<double> rep =
        cfg.physical ? validate_regimes(*cfg.physical, e, cfg.margin)
                     : validate_regimes(e, cfg.margin);

    out << "effective parameters [" << e.unit << "]\n";
    out << "  g1          = " << format_number(e.g1) << "\n";
    out << "  g2          = " << format_number(e.g2) << "\n";
    out << "  omega_prime = " << format_number(e.omega_prime) << "\n";
    out << "  kappa1      = " << format_number(e.kappa1) << "\n";
    out << "  kappa2      = " << format_number(e.kappa2) << "\n";
    out << "  n_atoms     = " << format_number(e.n_atoms) << "\n";
    out << "  chi1        = " << format_number(e.chi1) << "\n";
    out << "  chi2        = " << format_number(e.chi2) << "\n";
    out << "  chi         = " << format_number(e.chi) << "\n";
    if (e.g1 != 0.0) {
      out << "  kappa1/g1   = " << format_number(e.kappa1 / e.g1) << "\n";
    }
    out << "regime checks (margin " << format_number(rep.margin) << ")\n";
    for (const auto& c : rep.checks) {
      out << "  " << (c.pass ? "pass" : "FAIL") << "  " << c.name << ": "
          << c.inequality << "  ratio = " << format_number(c.ratio) << "\n";
    }
    if (!cfg.out_path.empty()) {
      std::ofstream f(cfg.out_path);
      if (!f) throw ConfigError("cannot write output file: " + cfg.out_path);
      f << json{{"effective", effective_to_json(e)},
                {"regimes", regime_to_json(rep)}}
               .dump(2)
        << "\n";
    }
    return 0;
  } catch (const ConfigError& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  }
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const auto e = resolve_effective(cfg);
    if (cfg.omega_points < 1 || !(cfg.omega_min < cfg.omega_max))
      throw ConfigError("invalid frequency grid");
    OutputTarget target(cfg, out);
    std::ostream& os = target.stream();

    ScatteringOptions sopts;
    if (cfg.flip_coupling_sign) sopts.off_diag_sign = -1.0;

    const VectorX<double> full =
        linspace(cfg.omega_min, cfg.omega_max, cfg.omega_points);
    std::vector<double> kept;
    kept.reserve(full.size());
    std::vector<double> skipped;
    for (Eigen::Index i = 0; i < full.size(); ++i) {
      if (std::abs(full(i) - e.omega_prime) <=
          sopts.pole_guard_rel * std::abs(e.omega_prime))
        skipped.push_back(full(i));
      else
        kept.push_back(full(i));
    }
    VectorX<double> grid =
        Eigen::Map<const VectorX<double>>(kept.data(), kept.size());

    bool with_approx = cfg.include_approx;
    std::string approx_note;
    if (with_approx) {
      if (std::abs(e.kappa1 - e.kappa2) >
          1e-12 * std::max(std::abs(e.kappa1), 1.0)) {
        with_approx = false;
        approx_note = "approximation column dropped: kappa1 != kappa2";
      } else if (grid.size() > 0 &&
                 std::max(std::abs(grid(0)), std::abs(grid(grid.size() - 1))) >=
                     e.omega_prime) {
        with_approx = false;
        approx_note = "approximation column dropped: grid exceeds |omega| < omega'";
      }
    }

    const auto curve = squeezing_spectrum(e, cfg.theta, grid, with_approx, sopts);

    echo_effective(os, e);
    comment(os, "theta", cfg.theta);
    comment(os, "omega_min", cfg.omega_min);
    comment(os, "omega_max", cfg.omega_max);
    comment(os, "omega_points", static_cast<double>(cfg.omega_points));
    comment(os, "include_approx", with_approx ? "true" : "false");
    for (double w : skipped)
      os << "# skipped omega = " << format_number(w)
         << " (inside collective-mode pole guard)\n";
    if (!approx_note.empty()) os << "# " << approx_note << "\n";

    os << "omega,S_plus,S_minus";
    if (with_approx) os << ",S_approx";
    os << "\n";
    for (Eigen::Index i = 0; i < curve.omega.size(); ++i) {
      os << format_number(curve.omega(i)) << ',' << format_number(curve.s_plus(i))
         << ',' << format_number(curve.s_minus(i));
      if (with_approx) os << ',' << format_number(curve.s_approx(i));
      os << "\n";
    }
    if (cfg.emit_plot_script && !cfg.out_path.empty())
      io::write_plot_script(cfg.out_path + ".plot.py", cfg.out_path, "omega",
                            with_approx ? "S_plus,S_minus,S_approx"
                                        : "S_plus,S_minus");
    return 0;
  } catch (const ConfigError& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  }
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const auto e = resolve_effective(cfg);
    if (cfg.sweep_grid.empty()) throw ConfigError("sweep.grid must be non-empty");
    MinimizeOptions<double> mopts;
    mopts.window_lo = cfg.window_lo;
    mopts.window_hi = cfg.window_hi;
    mopts.scan_points = cfg.scan_points;
    if (cfg.flip_coupling_sign) mopts.scattering.off_diag_sign = -1.0;

    SweepResult<double> res;
    if (cfg.sweep_parameter == "kappa") {
      res = sweep_kappa(e, cfg.sweep_grid, cfg.theta, QuadratureSign::plus,
                        mopts, cfg.workers);
    } else if (cfg.sweep_parameter == "n_atoms") {
      res = sweep_atoms(e, cfg.sweep_grid, cfg.theta, QuadratureSign::plus,
                        mopts, cfg.workers);
    } else {
      throw ConfigError("sweep.parameter must be 'kappa' or 'n_atoms'");
    }

    OutputTarget target(cfg, out);
    std::ostream& os = target.stream();
    echo_effective(os, e);
    comment(os, "sweep_parameter", res.parameter);
    comment(os, "theta", cfg.theta);
    comment(os, "scan_points", static_cast<double>(cfg.scan_points));
    comment(os, "window_lo", mopts.window_lo);
    comment(os, "window_hi", mopts.window_hi);
    os << res.parameter << ",omega_min,S_min,entangled,low_excitation_ok\n";
    for (const auto& r : res.records) {
      os << format_number(r.value) << ',' << format_number(r.omega_min) << ','
         << format_number(r.s_min) << ',' << (r.entangled ? 1 : 0) << ','
         << (r.low_excitation_ok ? 1 : 0) << "\n";
    }
    if (cfg.emit_plot_script && !cfg.out_path.empty())
      io::write_plot_script(cfg.out_path + ".plot.py", cfg.out_path,
                            res.parameter, "S_min");
    return 0;
  } catch (const ConfigError& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  }
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const auto e = resolve_effective(cfg);
    if (e.chi <= 0.0 && cfg.chi_tau > 0.0)
      throw ConfigError("chi_tau requires chi > 0; give explicit couplings");
    const double tau = e.chi > 0.0 ? cfg.chi_tau / e.chi : 0.0;
    const auto co = su11_coefficients(e, tau);
    const int n_max = cfg.n_max > 0
                          ? cfg.n_max
                          : std::max(pair_truncation_for(e, tau,
                                                         cfg.tail_threshold),
                                     8);

    const auto closed = evolve_closed_form(e, tau, n_max, cfg.tail_threshold);
    const auto numeric = evolve_numeric(e, tau, n_max, cfg.tail_threshold);
    const double fid = fidelity(closed, numeric);
    const VectorX<double> p = pair_distribution(closed);

    json doc;
    doc["effective"] = effective_to_json(e);
    doc["tau"] = tau;
    doc["chi_tau"] = cfg.chi_tau;
    doc["n_max"] = n_max;
    doc["su11"] = json{{"gamma", complex_to_json(co.gamma)},
                       {"gamma_tilde", complex_to_json(co.gamma_tilde)},
                       {"beta", complex_to_json(co.beta)},
                       {"Gamma", complex_to_json(co.Gamma)},
                       {"Gamma_tilde", complex_to_json(co.Gamma_tilde)},
                       {"abs_Gamma", std::abs(co.Gamma)}};
    doc["closed_form"] = json{{"tail_mass", closed.tail_mass},
                              {"converged", closed.converged}};
    doc["numeric"] = json{{"tail_mass", numeric.tail_mass},
                          {"converged", numeric.converged},
                          {"norm_squared", numeric.norm_squared()},
                          {"off_pair_mass", off_pair_mass(numeric)}};
    doc["fidelity_closed_vs_numeric"] = fid;
    doc["entropy_nats"] = entanglement_entropy(closed);
    double mean_pairs = 0;
    for (int n = 0; n < p.size(); ++n) mean_pairs += n * p(n);
    doc["mean_pairs"] = mean_pairs;
    json pd = json::array();
    for (int n = 0; n < std::min<int>(16, p.size()); ++n) pd.push_back(p(n));
    doc["pair_distribution"] = pd;

    if (cfg.three_mode) {
      const auto tm = evolve_three_mode(e, tau, cfg.trunc1, cfg.trunc2,
                                        cfg.trunc_b, cfg.tail_threshold);
      double cmean = 0, cvar = 0;
      charge_moments(tm, cmean, cvar);
      const auto rho = reduce_to_two_modes(tm);
      const auto closed_small = evolve_closed_form(
          e, tau, std::min(cfg.trunc1, cfg.trunc2), cfg.tail_threshold);
      doc["three_mode"] =
          json{{"truncations", {cfg.trunc1, cfg.trunc2, cfg.trunc_b}},
               {"tails", {tm.tail1, tm.tail2, tm.tail_b}},
               {"converged", tm.converged},
               {"charge_mean", cmean},
               {"charge_variance", cvar},
               {"fidelity_reduced_vs_closed", fidelity(rho, closed_small)}};
    }

    OutputTarget target(cfg, out);
    target.stream() << doc.dump(2) << "\n";
    return 0;
  } catch (const ConfigError& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  }
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    std::vector<Check> checks;
    ScatteringOptions sopts;
    if (cfg.flip_coupling_sign) sopts.off_diag_sign = -1.0;
    const double pi = std::numbers::pi;

    auto record = [&](std::string name, bool pass, std::string detail) {
      checks.push_back({std::move(name), pass, std::move(detail)});
    };

    {  // uncoupled vacuum gives exactly the shot-noise floor
      double worst = 0;
      for (auto [g1, g2] : {std::pair{0.0, 0.0}, std::pair{1.0, 0.0}}) {
        const auto e =
            effective_from_direct<double>(g1, g2, 1e4, 1.0, 1.0, 1e4);
        const auto grid = linspace(-10, 10, 401);
        for (double th : {0.0, pi / 4, pi / 2})
          for (Eigen::Index i = 0; i < grid.size(); ++i)
            worst = std::max(worst, std::abs(squeezing_at(e, th, grid(i),
                                                          QuadratureSign::plus,
                                                          sopts) -
                                             1.0));
      }
      record("vacuum_baseline", worst <= 1e-12,
             "max |S - 1| = " + format_number(worst));
    }

    {  // output commutators: the scattering matrix must stay Bogoliubov
      double worst = 0;
      const auto check_set = [&](double kappa, double wp) {
        const auto e =
            effective_from_direct<double>(1.0, 1.0, wp, kappa, kappa, 1e4);
        const auto grid = linspace(-40, 40, 401);
        for (Eigen::Index i = 0; i < grid.size(); ++i)
          worst = std::max(
              worst, bogoliubov_residual(scattering_matrix(e, grid(i), sopts).A));
      };
      for (double kappa : {10.0, 5.0, 2.5}) check_set(kappa, 1e4);
      check_set(1.0, 1e5);
      record("bogoliubov_identities", worst <= 1e-10,
             "max residual = " + format_number(worst));
    }

    {  // the two joint quadrature currents carry identical noise power
      double worst = 0;
      const auto e = effective_from_direct<double>(1.0, 0.7, 1e4, 3.0, 1.5, 1e4);
      for (double th : {0.0, 0.3, pi / 4, pi / 2})
        for (double w : {-7.0, -1.3, -0.2, 0.4, 2.9})
          worst = std::max(
              worst,
              std::abs(squeezing_at(e, th, w, QuadratureSign::plus, sopts) -
                       squeezing_at(e, th, w, QuadratureSign::minus, sopts)));
      record("plus_minus_symmetry", worst <= 1e-10,
             "max |S+ - S-| = " + format_number(worst));
    }

    {  // quadrature angle is pi-periodic up to rounding of the phase factors
      double worst = 0;
      const auto e = effective_from_direct<double>(1.0, 1.0, 1e5, 1.0, 1.0, 1e4);
      for (double th : {0.0, 0.4, pi / 4})
        for (double w : {-0.9, -0.3, 0.6})
          worst = std::max(worst, std::abs(squeezing_at(e, th, w) -
                                           squeezing_at(e, th + pi, w)));
      record("theta_periodicity", worst <= 1e-12,
             "max |S(theta) - S(theta+pi)| = " + format_number(worst));
    }

    {  // the input-coupling sign convention leaves every |.|^2 unchanged
      double worst = 0;
      const auto e = effective_from_direct<double>(1.0, 1.0, 1e5, 1.0, 1.0, 1e4);
      ScatteringOptions alt = sopts;
      alt.alternate_input_sign = true;
      for (double w : {-2.0, -0.4, 0.9})
        worst = std::max(worst,
                         std::abs(squeezing_at(e, 0.0, w, QuadratureSign::plus,
                                               sopts) -
                                  squeezing_at(e, 0.0, w, QuadratureSign::plus,
                                               alt)));
      record("input_sign_invariance", worst <= 1e-12,
             "max |dS| = " + format_number(worst));
    }

    {  // factorization coefficients do not depend on the sqrt branch of beta
      double worst = 0;
      for (auto [c1, c2, ct] : {std::tuple{1.0, 1.0, 0.3},
                                std::tuple{2.0, 0.5, 0.5},
                                std::tuple{0.9, 1.7, 0.05}}) {
        const double chi = std::sqrt(c1 * c2);
        const auto e = effective_from_direct<double>(
            std::sqrt(c1), std::sqrt(c2), 1.0, 1.0, 1.0, 1.0);
        const double tau = ct / chi;
        const auto a = su11_coefficients(e, tau);
        const auto b = detail::disentangle<double>(a.gamma, a.gamma_tilde, -1);
        worst = std::max({worst, std::abs(a.Gamma - b.Gamma),
                          std::abs(a.Gamma_tilde - b.Gamma_tilde)});
      }
      record("su11_branch_invariance", worst <= 1e-12,
             "max coefficient shift = " + format_number(worst));
    }

    {  // closed form against the matrix-exponential route
      double worst = 0, tail = 0;
      for (auto [c1, c2, ct] :
           {std::tuple{1.0, 1.0, 0.3}, std::tuple{2.0, 0.5, 0.5}}) {
        const double chi = std::sqrt(c1 * c2);
        const auto e = effective_from_direct<double>(
            std::sqrt(c1), std::sqrt(c2), 1.0, 1.0, 1.0, 1.0);
        const double tau = ct / chi;
        const auto cf = evolve_closed_form(e, tau, 40);
        const auto nm = evolve_numeric(e, tau, 40);
        worst = std::max(worst, 1.0 - fidelity(cf, nm));
        tail = std::max({tail, cf.tail_mass, nm.tail_mass});
      }
      record("oracle_equivalence", worst <= 1e-8 && tail < 1e-12,
             "max 1-F = " + format_number(worst) +
                 ", max tail = " + format_number(tail));
    }

    {  // photons appear strictly in pairs; propagation stays norm-preserving
      const auto e = effective_from_direct<double>(1.0, 1.0, 1.0, 1.0, 1.0, 1.0);
      const auto nm = evolve_numeric(e, 0.4, 30);
      const double off = off_pair_mass(nm);
      const double norm_err = std::abs(nm.norm_squared() - 1.0);
      record("pair_superselection", off < 1e-12 && norm_err <= 1e-10,
             "off-pair mass = " + format_number(off) +
                 ", |norm^2 - 1| = " + format_number(norm_err));
    }

    {  // conserved charge of the three-mode model
      const auto e = effective_from_direct<double>(1.0, 1.0, 100.0, 1.0, 1.0, 25.0);
      const auto tm = evolve_three_mode(e, 0.05, 6, 6, 3);
      double mean = 0, var = 0;
      charge_moments(tm, mean, var);
      record("charge_conservation", std::abs(mean) < 1e-10 && var < 1e-10,
             "<C> = " + format_number(mean) + ", var = " + format_number(var));
    }

    {  // eliminating the collective mode reproduces the pair dynamics
      const auto e = effective_from_direct<double>(1.0, 1.0, 1e4, 1.0, 1.0, 1e4);
      const double tau = 0.2 / e.chi;
      const auto tm = evolve_three_mode(e, tau, 10, 10, 4);
      const auto rho = reduce_to_two_modes(tm);
      const auto cf = evolve_closed_form(e, tau, 10);
      const double fid = fidelity(rho, cf);
      record("elimination_consistency", fid >= 0.99,
             "reduced fidelity = " + format_number(fid));
    }

    {  // informational: dispersive approximation deviation at its design point
      const auto e = effective_from_direct<double>(1.0, 1.0, 1e5, 1.0, 1.0, 1e4);
      const auto cmp = compare_approx(e, linspace(-3, 3, 241), sopts);
      out << "info approx_deviation: max = " << format_number(cmp.max_dev)
          << ", mean = " << format_number(cmp.mean_dev)
          << " over |omega| <= 3\n";
    }

    bool all = true;
    for (const auto& c : checks) {
      out << (c.pass ? "ok   " : "FAIL ") << c.name << ": " << c.detail << "\n";
      all = all && c.pass;
    }
    out << (all ? "validate: all checks passed\n"
                : "validate: at least one check failed\n");
    return all ? 0 : 1;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  }
}

}  // namespace twinbeam
