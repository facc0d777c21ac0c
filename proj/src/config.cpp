#include "config.hpp"

#include <fstream>

#include <json.hpp>

namespace twinbeam {

namespace {

using nlohmann::json;

template <typename T>
void read_into(const json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

void parse_physical(const json& j, PhysicalParams<double>& p) {
  read_into(j, "lambda1", p.lambda1);
  read_into(j, "lambda2", p.lambda2);
  read_into(j, "rabi1", p.rabi1);
  read_into(j, "rabi2", p.rabi2);
  read_into(j, "delta", p.delta);
  read_into(j, "omega21", p.omega21);
  read_into(j, "nu", p.nu);
  read_into(j, "kappa1", p.kappa1);
  read_into(j, "kappa2", p.kappa2);
  read_into(j, "n_atoms", p.n_atoms);
  read_into(j, "unit", p.unit);
}

void parse_effective(const json& j, EffectiveInput& e) {
  read_into(j, "g1", e.g1);
  read_into(j, "g2", e.g2);
  read_into(j, "omega_prime", e.omega_prime);
  read_into(j, "kappa1", e.kappa1);
  read_into(j, "kappa2", e.kappa2);
  read_into(j, "n_atoms", e.n_atoms);
  read_into(j, "unit", e.unit);
  if (j.contains("g")) {  // shorthand for g1 = g2 = g
    e.g1 = e.g2 = j.at("g").get<double>();
  }
  if (j.contains("kappa")) {  // shorthand for kappa1 = kappa2 = kappa
    e.kappa1 = e.kappa2 = j.at("kappa").get<double>();
  }
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    f >> j;
  } catch (const json::exception& ex) {
    throw ConfigError("config parse error in " + path + ": " + ex.what());
  }
  try {
    RunConfig cfg;
    if (j.contains("physical")) {
      PhysicalParams<double> p;
      parse_physical(j.at("physical"), p);
      cfg.physical = p;
    }
    if (j.contains("effective")) {
      EffectiveInput e;
      parse_effective(j.at("effective"), e);
      cfg.effective = e;
    }
    if (j.contains("spectrum")) {
      const auto& s = j.at("spectrum");
      read_into(s, "theta", cfg.theta);
      read_into(s, "omega_min", cfg.omega_min);
      read_into(s, "omega_max", cfg.omega_max);
      read_into(s, "omega_points", cfg.omega_points);
      read_into(s, "include_approx", cfg.include_approx);
    }
    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      read_into(s, "parameter", cfg.sweep_parameter);
      read_into(s, "grid", cfg.sweep_grid);
      read_into(s, "theta", cfg.theta);
      read_into(s, "scan_points", cfg.scan_points);
      if (s.contains("window")) {
        const auto w = s.at("window").get<std::vector<double>>();
        if (w.size() != 2) throw ConfigError("sweep.window must be [lo, hi]");
        cfg.window_lo = w[0];
        cfg.window_hi = w[1];
      }
    }
    if (j.contains("evolve")) {
      const auto& s = j.at("evolve");
      read_into(s, "chi_tau", cfg.chi_tau);
      read_into(s, "n_max", cfg.n_max);
      read_into(s, "three_mode", cfg.three_mode);
      read_into(s, "tail_threshold", cfg.tail_threshold);
      if (s.contains("truncations")) {
        const auto t = s.at("truncations").get<std::vector<int>>();
        if (t.size() != 3)
          throw ConfigError("evolve.truncations must be [n1, n2, nb]");
        cfg.trunc1 = t[0];
        cfg.trunc2 = t[1];
        cfg.trunc_b = t[2];
      }
    }
    read_into(j, "margin", cfg.margin);
    read_into(j, "workers", cfg.workers);
    read_into(j, "out", cfg.out_path);
    read_into(j, "emit_plot_script", cfg.emit_plot_script);
    return cfg;
  } catch (const json::exception& ex) {
    throw ConfigError("config field error in " + path + ": " + ex.what());
  }
}

EffectiveParams<double> resolve_effective(const RunConfig& cfg) {
  if (cfg.physical.has_value() == cfg.effective.has_value())
    throw ConfigError(
        "exactly one of the 'physical' and 'effective' parameter blocks must "
        "be given");
  if (cfg.physical) return derive_effective(*cfg.physical);
  const EffectiveInput& e = *cfg.effective;
  return effective_from_direct<double>(e.g1, e.g2, e.omega_prime, e.kappa1,
                                       e.kappa2, e.n_atoms, e.unit);
}

}  // namespace twinbeam
