#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "../src/commands.hpp"
#include "../src/config.hpp"

namespace {

struct CliState {
  std::string config_path;
  twinbeam::RunConfig cfg;

  // effective-parameter overrides (apply only when counted)
  double g = 1, g1 = 1, g2 = 1, kappa = 1, kappa1 = 1, kappa2 = 1;
  double omega_prime = 1e4, n_atoms = 1e4;
  std::string unit = "g";
  std::string grid_csv;
};

void add_param_overrides(CLI::App* cmd, CliState& st) {
  cmd->add_option("--g", st.g, "set g1 = g2 (effective block)");
  cmd->add_option("--g1", st.g1, "effective coupling, mode 1");
  cmd->add_option("--g2", st.g2, "effective coupling, mode 2");
  cmd->add_option("--kappa", st.kappa, "set kappa1 = kappa2");
  cmd->add_option("--kappa1", st.kappa1, "cavity decay, mode 1");
  cmd->add_option("--kappa2", st.kappa2, "cavity decay, mode 2");
  cmd->add_option("--omega-prime", st.omega_prime, "collective-mode frequency");
  cmd->add_option("--n-atoms", st.n_atoms, "atom number");
  cmd->add_option("--unit", st.unit, "rate unit label");
}

// Flags win over the config file; unset flags leave the file values alone.
void apply_overrides(CLI::App* cmd, CliState& st) {
  auto counted = [cmd](const std::string& name) {
    return cmd->count(name) > 0;
  };
  const bool any_param =
      counted("--g") || counted("--g1") || counted("--g2") ||
      counted("--kappa") || counted("--kappa1") || counted("--kappa2") ||
      counted("--omega-prime") || counted("--n-atoms") || counted("--unit");
  if (!st.cfg.physical && (!st.cfg.effective.has_value() || any_param)) {
    if (!st.cfg.effective) st.cfg.effective = twinbeam::EffectiveInput{};
    auto& e = *st.cfg.effective;
    if (counted("--g")) e.g1 = e.g2 = st.g;
    if (counted("--g1")) e.g1 = st.g1;
    if (counted("--g2")) e.g2 = st.g2;
    if (counted("--kappa")) e.kappa1 = e.kappa2 = st.kappa;
    if (counted("--kappa1")) e.kappa1 = st.kappa1;
    if (counted("--kappa2")) e.kappa2 = st.kappa2;
    if (counted("--omega-prime")) e.omega_prime = st.omega_prime;
    if (counted("--n-atoms")) e.n_atoms = st.n_atoms;
    if (counted("--unit")) e.unit = st.unit;
  }
  if (!st.grid_csv.empty()) {
    st.cfg.sweep_grid.clear();
    std::stringstream ss(st.grid_csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) st.cfg.sweep_grid.push_back(std::stod(tok));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "twinbeam: two-mode entangled light from a pumped intracavity "
      "condensate -- effective parameters, pair-state dynamics, and output "
      "squeezing spectra"};
  app.require_subcommand(1);
  CliState st;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", st.config_path, "JSON config file");
    cmd->add_option("--out", st.cfg.out_path, "output file (default stdout)");
    cmd->add_option("--workers", st.cfg.workers, "parallel sweep workers");
    add_param_overrides(cmd, st);
    return cmd;
  };

  auto* c_params = add_common(app.add_subcommand(
      "params", "derive effective parameters and check regime assumptions"));
  c_params->add_option("--margin", st.cfg.margin, "regime margin (default 10)");

  auto* c_spec = add_common(app.add_subcommand(
      "spectrum", "output-field squeezing spectrum over a frequency grid"));
  c_spec->add_option("--theta", st.cfg.theta, "quadrature angle in radians");
  c_spec->add_option("--omega-min", st.cfg.omega_min, "grid start");
  c_spec->add_option("--omega-max", st.cfg.omega_max, "grid end");
  c_spec->add_option("--omega-points", st.cfg.omega_points, "grid size");
  c_spec->add_flag("--include-approx", st.cfg.include_approx,
                   "add the dispersive-approximation column");
  c_spec->add_flag("--emit-plot-script", st.cfg.emit_plot_script,
                   "write a companion matplotlib script next to the CSV");

  auto* c_sweep = add_common(app.add_subcommand(
      "sweep", "minimum squeezing versus kappa or atom number"));
  c_sweep->add_option("--theta", st.cfg.theta, "quadrature angle in radians");
  c_sweep->add_option("--parameter", st.cfg.sweep_parameter,
                      "'kappa' or 'n_atoms'");
  c_sweep->add_option("--grid", st.grid_csv, "comma-separated sweep values");
  c_sweep->add_option("--window-lo", st.cfg.window_lo, "search window start");
  c_sweep->add_option("--window-hi", st.cfg.window_hi, "search window end");
  c_sweep->add_option("--scan-points", st.cfg.scan_points,
                      "coarse scan points (default 2001)");
  c_sweep->add_flag("--emit-plot-script", st.cfg.emit_plot_script,
                    "write a companion matplotlib script next to the CSV");

  auto* c_evolve = add_common(app.add_subcommand(
      "evolve", "closed-form pair state, matrix-exponential cross-check, "
                "entanglement measures"));
  c_evolve->add_option("--chi-tau", st.cfg.chi_tau,
                       "evolution time in 1/chi units");
  c_evolve->add_option("--n-max", st.cfg.n_max, "Fock truncation (0 = auto)");
  c_evolve->add_flag("--three-mode", st.cfg.three_mode,
                     "also evolve the three-mode model and compare");

  auto* c_val = add_common(app.add_subcommand(
      "validate", "run the invariant suite; exit 0 only if all checks pass"));
  c_val->add_flag("--flip-coupling-sign", st.cfg.flip_coupling_sign,
                  "negative control: flip the relative sign of the "
                  "pair couplings in the drift matrix");

  CLI11_PARSE(app, argc, argv);

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active->count("--config") > 0) {
      // re-apply flag values on top of the file
      twinbeam::RunConfig file_cfg = twinbeam::load_config(st.config_path);
      const twinbeam::RunConfig flag_cfg = st.cfg;
      st.cfg = file_cfg;
      auto counted = [&](const std::string& n) {
        const auto* opt = active->get_option_no_throw(n);
        return opt != nullptr && opt->count() > 0;
      };
      if (counted("--out")) st.cfg.out_path = flag_cfg.out_path;
      if (counted("--workers")) st.cfg.workers = flag_cfg.workers;
      if (counted("--theta")) st.cfg.theta = flag_cfg.theta;
      if (counted("--omega-min")) st.cfg.omega_min = flag_cfg.omega_min;
      if (counted("--omega-max")) st.cfg.omega_max = flag_cfg.omega_max;
      if (counted("--omega-points")) st.cfg.omega_points = flag_cfg.omega_points;
      if (counted("--include-approx"))
        st.cfg.include_approx = flag_cfg.include_approx;
      if (counted("--emit-plot-script"))
        st.cfg.emit_plot_script = flag_cfg.emit_plot_script;
      if (counted("--margin")) st.cfg.margin = flag_cfg.margin;
      if (counted("--parameter")) st.cfg.sweep_parameter = flag_cfg.sweep_parameter;
      if (counted("--window-lo")) st.cfg.window_lo = flag_cfg.window_lo;
      if (counted("--window-hi")) st.cfg.window_hi = flag_cfg.window_hi;
      if (counted("--scan-points")) st.cfg.scan_points = flag_cfg.scan_points;
      if (counted("--chi-tau")) st.cfg.chi_tau = flag_cfg.chi_tau;
      if (counted("--n-max")) st.cfg.n_max = flag_cfg.n_max;
      if (counted("--three-mode")) st.cfg.three_mode = flag_cfg.three_mode;
      if (counted("--flip-coupling-sign"))
        st.cfg.flip_coupling_sign = flag_cfg.flip_coupling_sign;
    }
    apply_overrides(active, st);
  } catch (const twinbeam::ConfigError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }

  const std::string name = active->get_name();
  if (name == "params")
    return twinbeam::cmd_params(st.cfg, std::cout, std::cerr);
  if (name == "spectrum")
    return twinbeam::cmd_spectrum(st.cfg, std::cout, std::cerr);
  if (name == "sweep") return twinbeam::cmd_sweep(st.cfg, std::cout, std::cerr);
  if (name == "evolve")
    return twinbeam::cmd_evolve(st.cfg, std::cout, std::cerr);
  if (name == "validate")
    return twinbeam::cmd_validate(st.cfg, std::cout, std::cerr);
  std::cerr << "error: unknown command\n";
  return 2;
}
