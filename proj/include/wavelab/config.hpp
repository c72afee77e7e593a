#pragma once

// Run configuration: a flat text file of `section.key = value` lines with
// `#` comments.  Unknown keys are rejected; every problem found is reported
// together with its line number.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wavelab/exponents.hpp"
#include "wavelab/grid.hpp"
#include "wavelab/picard.hpp"
#include "wavelab/probes.hpp"
#include "wavelab/quadrature.hpp"

namespace wavelab {

enum class DataKind { gaussian, shell, bandlimited, zero };
std::string_view to_string(DataKind k);

struct DataConfig {
  DataKind kind = DataKind::gaussian;
  double amplitude = 1.0;
  double width = 1.0;
  double radius = 2.0;  // shell radius
  double velocity_amplitude = 0.0;
};

struct RunConfig {
  GridSpec grid;
  bool dealias = false;

  exponents::Params params;
  std::optional<double> epsilon;  // nullopt = one grid spacing
  std::optional<Rational> gamma;
  exponents::Theorem theorem = exponents::Theorem::local_l2;

  double T = 1.0;
  double dt = 1e-3;
  int snapshots = 65;
  double horizon = 10.0;
  QuadRule rule = QuadRule::simpson;

  int max_iters = 60;
  double tol = 1e-10;
  std::optional<double> a;
  std::string pair_set;  // empty = default set
  WorkingNorm norm = WorkingNorm::l2;

  DataConfig data;

  double cont_T_cap = 2.0;
  double cont_T_min = 1e-3;
  int cont_max_intervals = 200;
  bool cont_bisect = false;
  double delta_lo = 0.1;
  double delta_hi = 10.0;
  int delta_steps = 8;

  std::string probe = "all";
  int probe_samples = 100;
  std::optional<std::uint64_t> seed;
  SampleFamily family = SampleFamily::gaussian;
  double gn_p = 3.0;
  bool zero_velocity = false;

  std::string out_dir = "runs";
  bool csv = true;
  bool svg = false;

  /// Every key that was set explicitly, with its raw text.
  std::map<std::string, std::string> explicit_keys;

  EquationParams equation() const;
  PicardConfig picard() const;
  ContinuationOptions continuation() const;
  std::vector<exponents::AdmissiblePair> pairs() const;
  /// Canonical key = value listing of the full configuration (defaults included).
  std::map<std::string, std::string> echo() const;
};

/// Documented keys in canonical order.
const std::vector<std::string>& config_keys();

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Re-validates module preconditions for `subcommand`; throws ConfigError
/// listing every violation.
void validate_config(const RunConfig& cfg, std::string_view subcommand);

/// Initial data (φ, ψ) on cfg.grid.
std::pair<Field, Field> make_data(const RunConfig& cfg);

/// Largest radius at which |f| exceeds 1e-12·max|f| (0 for the zero field).
double support_radius(const Field& f);

}  // namespace wavelab
