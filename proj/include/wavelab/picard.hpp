#pragma once

// Contraction-map iteration for u_tt - Δu + w(x)|u|^α u = 0 on [t0, t0+T]:
//   H(u) = K̇φ + Kψ - G(w|u|^α u),
// sampled on a uniform snapshot grid and measured in the W-norm over a
// finite pair set (plus the Ḣ^s part in the fractional mode).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wavelab/dynamics.hpp"
#include "wavelab/exponents.hpp"
#include "wavelab/propagator.hpp"
#include "wavelab/trajectory.hpp"

namespace wavelab {

enum class WorkingNorm { l2, hs };
std::string_view to_string(WorkingNorm n);
WorkingNorm parse_working_norm(std::string_view s);

struct EquationParams {
  exponents::Params params;
  /// Weight regularization; nullopt means one grid spacing.
  std::optional<double> epsilon;
  /// Lebesgue exponent of the weight on the unit ball; nullopt = midpoint.
  std::optional<Rational> gamma;

  double alpha() const { return to_double(params.alpha); }
  double b() const { return to_double(params.b); }
  double s() const { return to_double(params.s); }
  double epsilon_on(const GridSpec& g) const { return epsilon.value_or(g.spacing()); }
  /// gamma or its default; requires b > 0.
  Rational lebesgue_gamma() const;
};

struct PicardConfig {
  double T = 1.0;
  int max_iters = 60;
  double tol = 1e-10;  // absolute, in the working norm
  std::optional<double> a;  // explicit ball radius; nullopt = auto
  int snapshots = 65;
  std::vector<exponents::AdmissiblePair> pairs;  // empty = default set
  WorkingNorm norm = WorkingNorm::l2;
  QuadRule rule = QuadRule::simpson;
  bool dealias = false;
  bool velocities = true;
  bool check_ball = true;
  bool require_eligible = true;

  void validate() const;
};

enum class PicardOutcome { converged, ball_escape, max_iters };
std::string_view to_string(PicardOutcome o);

struct PicardReport {
  double T = 0.0;
  double a = 0.0;
  std::vector<exponents::AdmissiblePair> pairs;
  std::vector<double> d;           // d_k, k = 1..iterations
  std::vector<double> ratio;       // d_k / d_{k-1}, k = 2..iterations
  std::vector<double> ball_norms;  // ‖u_k‖ in the working norm
  PicardOutcome outcome = PicardOutcome::max_iters;
  int iterations = 0;
  double max_ratio = 0.0;

  bool contracted() const { return outcome == PicardOutcome::converged && max_ratio <= 0.5; }
};

struct LocalSolution {
  Trajectory trajectory;
  PicardReport report;
};

class PicardEngine {
 public:
  PicardEngine(const GridSpec& g, const EquationParams& eq, const PicardConfig& cfg);

  const PicardConfig& config() const { return cfg_; }
  const std::vector<exponents::AdmissiblePair>& pairs() const { return pairs_; }
  const WeightField& weight() const { return weight_; }

  /// Free evolution of (φ, ψ) on the snapshot grid of [t0, t0+T].
  Trajectory linear(const Field& phi, const Field& psi, double t0 = 0.0) const;
  /// H(u) on the same nodes as `linear`.  Throws DivergenceError(iteration)
  /// on non-finite output.
  Trajectory contraction_map(const Trajectory& u, const Trajectory& linear,
                             int iteration = 0) const;
  double working_norm(const Trajectory& traj) const;
  /// Auto ball radius for data (φ, ψ).
  double auto_radius(const Field& phi, const Field& psi) const;
  LocalSolution solve(const Field& phi, const Field& psi, double t0 = 0.0) const;

 private:
  GridSpec grid_;
  EquationParams eq_;
  PicardConfig cfg_;
  PropagatorPlan plan_;
  WeightField weight_;
  std::vector<exponents::AdmissiblePair> pairs_;
};

LocalSolution solve_local(const Field& phi, const Field& psi, const PicardConfig& cfg,
                          const EquationParams& eq);

struct ThresholdSample {
  double T = 0.0;
  double max_ratio = 0.0;
  PicardOutcome outcome = PicardOutcome::max_iters;
  bool accepted = false;
};

struct ThresholdResult {
  double T_star = 0.0;  // largest accepted T found
  bool bracketed = false;
  std::vector<ThresholdSample> samples;
};

/// Largest T with a converged run whose max contraction ratio is <= 1/2,
/// by bisection in log T starting from [T_lo, T_hi] (expanded if needed).
ThresholdResult bisect_threshold(const Field& phi, const Field& psi, PicardConfig cfg,
                                 const EquationParams& eq, double T_lo, double T_hi,
                                 int steps = 12);

struct IntervalRecord {
  double t0 = 0.0;
  double T = 0.0;
  int iterations = 0;
  double max_ratio = 0.0;
  PicardOutcome outcome = PicardOutcome::max_iters;
  bool accepted = false;
  double energy_drift = 0.0;  // max relative deviation from the interval's start energy
};

struct ContinuationOptions {
  double T_cap = 2.0;
  double T_min = 1e-3;
  int max_intervals = 200;
};

struct ContinuationResult {
  Trajectory trajectory;  // accepted snapshots, interval endpoints not repeated
  std::vector<IntervalRecord> intervals;  // accepted and rejected attempts
  std::vector<EnergyRecord> energy;
  bool reached_horizon = false;
  std::string stop_reason;

  std::vector<double> accepted_lengths() const;
};

/// Consecutive local solves, halving T after a rejected attempt (no
/// convergence or ratio > 1/2) and doubling it up to T_cap after success.
ContinuationResult continue_solution(const Field& phi, const Field& psi, double horizon,
                                     PicardConfig cfg, const EquationParams& eq,
                                     const ContinuationOptions& opts = {});

struct SmallDataRun {
  double delta = 0.0;
  bool reached_horizon = false;
  double sup_energy_norm = 0.0;         // sup_t ‖u_t‖ + ‖∇u‖ along the continuation
  double sup_linear_energy_norm = 0.0;  // same for the free evolution
  double growth = 0.0;                  // ratio of the two
  bool within_bound = false;            // reached and growth <= 2
  bool intervals_shrink = false;        // accepted lengths monotonically decreasing
  double max_energy_drift = 0.0;
  ContinuationResult continuation;
};

SmallDataRun run_small_data(const Field& phi, const Field& psi, double delta, double horizon,
                            const PicardConfig& cfg, const EquationParams& eq,
                            const ContinuationOptions& opts = {});

struct DeltaBisection {
  double delta_star = 0.0;
  bool found = false;
  std::vector<SmallDataRun> runs;
};

/// Largest δ in [delta_lo, delta_hi] (log bisection) whose run stays within bound.
DeltaBisection bisect_delta(const Field& phi, const Field& psi, double horizon,
                            const PicardConfig& cfg, const EquationParams& eq, double delta_lo,
                            double delta_hi, int steps, const ContinuationOptions& opts = {});

}  // namespace wavelab
