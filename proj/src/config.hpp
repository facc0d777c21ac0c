#ifndef TWINBEAM_CONFIG_HPP
#define TWINBEAM_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twinbeam/params.hpp"

namespace twinbeam {

/// Raised for malformed configuration; maps to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Inputs of the effective block before derived fields are filled in.
struct EffectiveInput {
  double g1 = 1.0, g2 = 1.0;
  double omega_prime = 1e4;
  double kappa1 = 1.0, kappa2 = 1.0;
  double n_atoms = 1e4;
  std::string unit = "g";
};

/// Fully resolved run configuration; defaults here are the documented ones.
struct RunConfig {
  std::optional<PhysicalParams<double>> physical;
  std::optional<EffectiveInput> effective;

  // spectrum
  double theta = 0.0;
  double omega_min = -10.0;
  double omega_max = 10.0;
  int omega_points = 2001;
  bool include_approx = false;

  // sweep
  std::string sweep_parameter = "kappa";
  std::vector<double> sweep_grid;
  double window_lo = 0.0;  // lo == hi means auto window
  double window_hi = 0.0;
  int scan_points = 2001;

  // evolve
  double chi_tau = 0.3;    // evolution time in 1/chi units
  int n_max = 0;           // 0 = pick from the geometric tail
  bool three_mode = false;
  int trunc1 = 10, trunc2 = 10, trunc_b = 4;
  double tail_threshold = 1e-12;

  // common
  double margin = 10.0;
  int workers = 1;
  std::string out_path;
  bool emit_plot_script = false;
  bool flip_coupling_sign = false;
};

/// Parses the JSON config file. Throws ConfigError on malformed input.
RunConfig load_config(const std::string& path);

/// Exactly one parameter block, and the resolved EffectiveParams from it.
EffectiveParams<double> resolve_effective(const RunConfig& cfg);

}  // namespace twinbeam

#endif
