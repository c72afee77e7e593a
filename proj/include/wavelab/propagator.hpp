#pragma once

// Linear wave propagators as exact Fourier multipliers:
//   K̇(t) = cos(|ξ|t),  K(t) = sin(|ξ|t)/|ξ| (value t at ξ = 0),
// and the retarded integral G(h)(t) = ∫_0^t K(t-τ) h(τ) dτ.

#include <functional>
#include <memory>
#include <vector>

#include "wavelab/grid.hpp"
#include "wavelab/quadrature.hpp"

namespace wavelab {

struct State {
  Field u;
  Field ut;
};

class PropagatorPlan {
 public:
  explicit PropagatorPlan(const GridSpec& g);

  const GridSpec& grid() const { return grid_; }
  const std::vector<double>& xi() const { return *xi_; }

  /// In-place multipliers on spectral coefficients.
  void apply_kdot(SpectralField& F, double t) const;
  void apply_k(SpectralField& F, double t) const;
  /// -|ξ| sin(|ξ|t), the time derivative of K̇(t).
  void apply_kdot_rate(SpectralField& F, double t) const;

  /// Multiplier tables for a fixed t.
  std::vector<double> cos_table(double t) const;
  std::vector<double> sinc_table(double t) const;

 private:
  GridSpec grid_;
  std::shared_ptr<const std::vector<double>> xi_;
};

Field apply_kdot(const Field& phi, double t);
Field apply_k(const Field& psi, double t);

/// (u, u_t) of the free wave with data (φ, ψ) at time t.
State linear_solve(const Field& phi, const Field& psi, double t);
State linear_solve(const PropagatorPlan& plan, const SpectralField& phi_hat,
                   const SpectralField& psi_hat, double t);

using FieldSampler = std::function<Field(double)>;

/// ∫_0^t K(t-τ) h(τ) dτ by composite quadrature on q.intervals panels.
Field duhamel(const FieldSampler& h, double t, const QuadSpec& q);
/// The same integral together with its time derivative ∫_0^t K̇(t-τ) h(τ) dτ.
State duhamel_state(const FieldSampler& h, double t, const QuadSpec& q);

/// Retarded integral evaluated at every node t_i = i·dt of a snapshot grid,
/// given spectral samples h_hat[j] of h(t_j).  Node 0 gets zero; node i uses
/// running_weights(i).  When velocity is non-null it receives the K̇ part.
std::vector<SpectralField> duhamel_on_nodes(const PropagatorPlan& plan,
                                            const std::vector<SpectralField>& h_hat, double dt,
                                            QuadRule rule,
                                            std::vector<SpectralField>* velocity = nullptr);

}  // namespace wavelab
