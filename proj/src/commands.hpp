#ifndef TWINBEAM_COMMANDS_HPP
#define TWINBEAM_COMMANDS_HPP

#include <ostream>

#include "config.hpp"

namespace twinbeam {

// Each command returns a process exit code: 0 success, 1 validation failure,
// 2 usage/config error. CSV/JSON results go to cfg.out_path when set,
// otherwise to `out`. Diagnostics go to `err`.
int cmd_params(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_evolve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace twinbeam

#endif
