#pragma once

// Mixed space-time Lebesgue norms, the W-norm over a finite pair set, and
// homogeneous Besov norms built from Littlewood-Paley blocks.

#include <vector>

#include "wavelab/exponents.hpp"
#include "wavelab/quadrature.hpp"
#include "wavelab/trajectory.hpp"

namespace wavelab {

/// ‖·‖_{L^q_t L^p_x}; infinite exponents are maxima over nodes/points.
struct MixedNormSpec {
  ExtRational q;
  ExtRational p;
  QuadRule rule = QuadRule::simpson;
};

/// ‖D^s f‖_{L^p}; s = 0 uses f itself.
double spatial_norm(const Field& f, const ExtRational& p, double s = 0.0);

/// L^q norm in time of node values on a uniform grid with spacing dt.
double time_norm(const std::vector<double>& values, const ExtRational& q, double dt,
                 QuadRule rule = QuadRule::simpson);

double mixed_norm(const Trajectory& traj, const MixedNormSpec& spec, double s = 0.0);

/// Throws ConfigError unless every pair is optimal.
void require_optimal(const std::vector<exponents::AdmissiblePair>& pairs);

/// ‖u‖_{L^q_t L^{3r}_x} (after D^s) for each pair, in order.
std::vector<double> pair_norms(const Trajectory& traj,
                               const std::vector<exponents::AdmissiblePair>& pairs, double s = 0.0);

/// max over the pair set; rejects empty or non-optimal sets with ConfigError.
double w_norm(const Trajectory& traj, const std::vector<exponents::AdmissiblePair>& pairs,
              double s = 0.0);

struct BesovSpec {
  double sigma = 0.0;
  ExtRational p{2};
  ExtRational q{2};
  int j_min = 0;
  int j_max = 0;

  /// Whole resolvable dyadic band of g.
  static BesovSpec on_grid(const GridSpec& g, double sigma, const ExtRational& p,
                           const ExtRational& q);
};

/// {Σ_j (2^{jσ} ‖P_{2^j} f‖_{L^p})^q}^{1/q}
double besov_norm(const Field& f, const BesovSpec& spec);

}  // namespace wavelab
