#include "wavelab/trajectory.hpp"

#include <cmath>

#include "wavelab/error.hpp"
#include "wavelab/propagator.hpp"

namespace wavelab {

double Trajectory::step() const {
  if (times.size() < 2) return 0.0;
  const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (std::abs(times[i] - times[i - 1] - dt) > 1e-9 * std::max(1.0, std::abs(dt))) {
      throw ShapeError("trajectory time nodes are not uniform");
    }
  }
  return dt;
}

void Trajectory::validate() const {
  if (times.empty()) throw ShapeError("empty trajectory");
  if (u.size() != times.size()) throw ShapeError("trajectory has mismatched node counts");
  if (!ut.empty() && ut.size() != times.size()) throw ShapeError("trajectory velocity count mismatch");
  for (const auto& f : u) {
    if (!(f.grid == grid)) throw ShapeError("trajectory field on the wrong grid");
  }
}

std::vector<double> uniform_nodes(double t0, double T, int nodes) {
  if (nodes < 1) throw DomainError("need at least one time node");
  std::vector<double> t(static_cast<std::size_t>(nodes), t0);
  if (nodes == 1) return t;
  const double dt = T / (nodes - 1);
  for (int i = 0; i < nodes; ++i) t[static_cast<std::size_t>(i)] = t0 + i * dt;
  return t;
}

Trajectory frozen_trajectory(const Field& f, double T, int nodes) {
  Trajectory tr;
  tr.grid = f.grid;
  tr.times = uniform_nodes(0.0, T, nodes);
  tr.u.assign(tr.times.size(), f);
  return tr;
}

Trajectory linear_trajectory(const Field& phi, const Field& psi, double T, int nodes) {
  if (!(phi.grid == psi.grid)) throw ShapeError("phi and psi live on different grids");
  PropagatorPlan plan(phi.grid);
  const auto P = forward(phi);
  const auto Q = forward(psi);
  Trajectory tr;
  tr.grid = phi.grid;
  tr.times = uniform_nodes(0.0, T, nodes);
  for (double t : tr.times) {
    auto s = linear_solve(plan, P, Q, t);
    tr.u.push_back(std::move(s.u));
    tr.ut.push_back(std::move(s.ut));
  }
  return tr;
}

Trajectory difference(const Trajectory& a, const Trajectory& b) {
  if (a.size() != b.size() || !(a.grid == b.grid)) throw ShapeError("trajectory shapes differ");
  Trajectory d;
  d.grid = a.grid;
  d.times = a.times;
  d.u.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d.u.push_back(a.u[i] - b.u[i]);
  return d;
}

Trajectory scaled(const Trajectory& a, double c) {
  Trajectory out = a;
  for (auto& f : out.u) f *= c;
  for (auto& f : out.ut) f *= c;
  return out;
}

}  // namespace wavelab
