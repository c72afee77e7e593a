#pragma once

#include <vector>

#include "wavelab/grid.hpp"

namespace wavelab {

/// Fields sampled on uniform time nodes t_i = t0 + i·dt.
struct Trajectory {
  GridSpec grid;
  std::vector<double> times;
  std::vector<Field> u;
  std::vector<Field> ut;  // empty when velocities were not computed

  std::size_t size() const { return times.size(); }
  bool has_velocity() const { return !ut.empty(); }
  /// Node spacing; 0 for a single node.  Throws ShapeError if non-uniform.
  double step() const;
  void validate() const;
};

std::vector<double> uniform_nodes(double t0, double T, int nodes);

/// f repeated on `nodes` uniform nodes of [0, T].
Trajectory frozen_trajectory(const Field& f, double T, int nodes);
/// Free wave with data (φ, ψ) on `nodes` uniform nodes of [0, T].
Trajectory linear_trajectory(const Field& phi, const Field& psi, double T, int nodes);

/// Node-wise a - b of the displacement fields (velocities dropped).
Trajectory difference(const Trajectory& a, const Trajectory& b);
Trajectory scaled(const Trajectory& a, double c);

}  // namespace wavelab
