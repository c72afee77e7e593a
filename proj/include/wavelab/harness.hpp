#pragma once

// Experiment orchestration behind the `wavelab` tool.  Each run writes its
// CSV tables, optional SVG plots and exactly one manifest.json into a fresh
// timestamped directory under the configured output directory.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wavelab/config.hpp"
#include "wavelab/exponents.hpp"

namespace wavelab {

/// check-exponents, simulate, picard, continue, norms, probe, sweep
const std::vector<std::string>& subcommands();

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_config = 2;

struct RunResult {
  int exit_code = exit_ok;
  std::filesystem::path dir;  // empty when the config was rejected
  std::string manifest;       // JSON text of the manifest
};

/// Validates cfg for `subcommand`, runs it and writes the artifacts.
/// Human-readable output goes to `out`, diagnostics to `err`.
RunResult run(std::string_view subcommand, const RunConfig& cfg, std::ostream& out,
              std::ostream& err);

/// Text report of the exponent bookkeeping for (α, b, s) under `theorem`.
std::string exponent_report(const exponents::Params& p, const std::optional<Rational>& gamma,
                            exponents::Theorem theorem);

/// Least-squares slope of ln y against ln x.
double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Pair set a Picard run with this config will use.
std::vector<exponents::AdmissiblePair> resolved_pairs(const RunConfig& cfg);

}  // namespace wavelab
