#pragma once

// Nonlinearity w(x)|u|^α u, the weighted energy, and a velocity-Verlet
// reference integrator used as an independent oracle.

#include <iosfwd>
#include <vector>

#include "wavelab/grid.hpp"
#include "wavelab/propagator.hpp"

namespace wavelab {

/// w_ε(x) = (|x|^2 + ε^2)^{-b/2}.
struct WeightField {
  GridSpec grid;
  std::vector<double> values;
  double b = 0.0;
  double epsilon = 0.0;
  bool enabled = true;
};

/// ε = 0 with b > 0 is accepted only in radial mode; the origin node then
/// carries weight 0 (it is excluded from the equation's potential).
WeightField make_weight(const GridSpec& g, double b, double epsilon);
/// w ≡ 0: turns the equation linear.
WeightField disabled_weight(const GridSpec& g);

Field nonlinearity(const Field& u, const WeightField& w, double alpha);

struct EnergyRecord {
  double t = 0.0;
  double kinetic = 0.0;
  double gradient = 0.0;
  double potential = 0.0;
  double total = 0.0;
};

EnergyRecord energy(const Field& u, const Field& ut, const WeightField& w, double alpha,
                    double t = 0.0);

/// ‖u_t‖_{L^2} + ‖∇u‖_{L^2}
double energy_norm(const Field& u, const Field& ut);

void write_energy_csv(std::ostream& os, const std::vector<EnergyRecord>& series);

/// Largest stable step c·L/(π n) of the Verlet scheme, c = 1.9/√d.
double stability_limit(const GridSpec& g);

/// One kick-drift-kick step.  Throws ConfigError when dt exceeds the
/// stability limit.
State reference_step(const State& s, double dt, const WeightField& w, double alpha);

class ReferenceIntegrator {
 public:
  ReferenceIntegrator(State initial, const WeightField& w, double alpha, double dt);

  void step();
  /// Steps until time() reaches t; t must be a multiple of dt within rounding.
  void advance_to(double t);

  const State& state() const { return state_; }
  double time() const { return steps_ * dt_; }
  long steps() const { return steps_; }
  EnergyRecord current_energy() const;

 private:
  Field acceleration(const Field& u) const;

  State state_;
  WeightField weight_;
  double alpha_;
  double dt_;
  long steps_ = 0;
  Field accel_;
};

}  // namespace wavelab
