#pragma once

// Command implementations behind the CLI. Each returns a JSON report and an
// exit code: 0 all checks pass, 1 a mathematical check fails, 2 bad input.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "twistflag/json_io.hpp"

namespace twistflag {

struct RunConfig {
  std::optional<std::string> config; ///< path or inline JSON
  double tol_residual = 1e-8;
  double tol_zero = 1e-8;
  double tol_pos = 1e-6;
  int samples = 100;
  std::uint64_t seed = 0;
  int bound = 1;
  int interp = 8;
  std::optional<std::string> beta;      ///< "p/q,r/s"
  std::optional<std::string> beta_imag; ///< sqrt(-3) parts, same format
  std::string branch = "generic";       ///< generic | degenerate
  unsigned threads = 0;

  /// Throws InvalidInput on non-positive tolerances, samples < 1, bound < 0 or interp < 1.
  void validate() const;
  Json echo() const;
};

struct CommandResult {
  Json report;
  int exit_code = 0;
};

CommandResult cmd_check(const RunConfig &cfg);
CommandResult cmd_isotropy(const RunConfig &cfg);
CommandResult cmd_verify(const RunConfig &cfg);
CommandResult cmd_generate(const RunConfig &cfg);
CommandResult cmd_cohomology(const RunConfig &cfg);
/// Writes the report to `out` one system per line; returns the exit code.
int cmd_enumerate(const RunConfig &cfg, std::ostream &out);

/// Parses "p/q,r/s" (and optionally the sqrt(-3) parts) into beta coordinates.
Beta parse_beta(const std::string &re, const std::optional<std::string> &im);

/// Runs a command by name and maps exceptions to exit codes. Non-streaming
/// commands write their report to `out` followed by a newline.
int run_command(const std::string &name, const RunConfig &cfg, std::ostream &out, std::ostream &err,
                bool timing = false);

} // namespace twistflag
