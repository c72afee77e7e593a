#include "wavelab/dynamics.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "wavelab/error.hpp"

namespace wavelab {

WeightField make_weight(const GridSpec& g, double b, double epsilon) {
  if (b < 0.0) throw DomainError("weight exponent b must be >= 0");
  if (epsilon < 0.0) throw DomainError("regularization epsilon must be >= 0");
  if (epsilon == 0.0 && b > 0.0 && g.mode == GridMode::full3d) {
    throw DomainError("epsilon = 0 is only allowed in radial1d mode");
  }
  WeightField w{g, std::vector<double>(g.size(), 1.0), b, epsilon, true};
  if (b == 0.0) return w;
  const double eps2 = epsilon * epsilon;
  auto weight = [&](double r2) { return std::pow(r2 + eps2, -0.5 * b); };
  if (g.mode == GridMode::radial1d) {
    for (int j = 0; j < g.n; ++j) {
      const double x = g.coordinate(j);
      w.values[static_cast<std::size_t>(j)] = (x == 0.0 && eps2 == 0.0) ? 0.0 : weight(x * x);
    }
    return w;
  }
  std::size_t idx = 0;
  for (int i = 0; i < g.n; ++i) {
    const double x = g.coordinate(i);
    for (int j = 0; j < g.n; ++j) {
      const double y = g.coordinate(j);
      for (int k = 0; k < g.n; ++k) {
        const double z = g.coordinate(k);
        w.values[idx++] = weight(x * x + y * y + z * z);
      }
    }
  }
  return w;
}

WeightField disabled_weight(const GridSpec& g) {
  return {g, std::vector<double>(g.size(), 0.0), 0.0, 0.0, false};
}

Field nonlinearity(const Field& u, const WeightField& w, double alpha) {
  if (alpha < 0.0) throw DomainError("nonlinearity power alpha must be >= 0");
  if (!(u.grid == w.grid)) throw ShapeError("field and weight live on different grids");
  Field out(u.grid);
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    const double v = u.values[i];
    out.values[i] = w.values[i] * std::pow(std::abs(v), alpha) * v;
  }
  return out;
}

EnergyRecord energy(const Field& u, const Field& ut, const WeightField& w, double alpha,
                    double t) {
  if (!(u.grid == ut.grid) || !(u.grid == w.grid)) throw ShapeError("energy operands differ in grid");
  EnergyRecord e;
  e.t = t;
  Field sq(u.grid), pot(u.grid);
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    sq.values[i] = ut.values[i] * ut.values[i];
    pot.values[i] = w.values[i] * std::pow(std::abs(u.values[i]), alpha + 2.0);
  }
  e.kinetic = 0.5 * grid_integral(sq);
  const double g1 = sobolev_seminorm(u, 1.0);
  e.gradient = 0.5 * g1 * g1;
  e.potential = grid_integral(pot) / (alpha + 2.0);
  e.total = e.kinetic + e.gradient + e.potential;
  return e;
}

double energy_norm(const Field& u, const Field& ut) {
  return lp_norm(ut, 2.0) + sobolev_seminorm(u, 1.0);
}

void write_energy_csv(std::ostream& os, const std::vector<EnergyRecord>& series) {
  auto put = [&os](double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    os.write(buf, res.ptr - buf);
  };
  os << "t,kinetic,gradient,potential,total\n";
  for (const auto& e : series) {
    put(e.t);
    os << ',';
    put(e.kinetic);
    os << ',';
    put(e.gradient);
    os << ',';
    put(e.potential);
    os << ',';
    put(e.total);
    os << '\n';
  }
}

double stability_limit(const GridSpec& g) {
  const double c = 1.9 / std::sqrt(static_cast<double>(g.array_dim()));
  return c * g.box_length / (std::numbers::pi * g.n);
}

namespace {

void check_step(const GridSpec& g, double dt) {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  if (dt > stability_limit(g)) {
    throw ConfigError("dt = " + std::to_string(dt) + " exceeds the stability limit " +
                      std::to_string(stability_limit(g)));
  }
}

Field verlet_acceleration(const Field& u, const WeightField& w, double alpha) {
  Field a = negative_laplacian(u);
  a *= -1.0;
  if (w.enabled) a -= nonlinearity(u, w, alpha);
  return a;
}

}  // namespace

State reference_step(const State& s, double dt, const WeightField& w, double alpha) {
  check_step(s.u.grid, dt);
  State out = s;
  out.ut.axpy(0.5 * dt, verlet_acceleration(s.u, w, alpha));
  out.u.axpy(dt, out.ut);
  out.ut.axpy(0.5 * dt, verlet_acceleration(out.u, w, alpha));
  return out;
}

ReferenceIntegrator::ReferenceIntegrator(State initial, const WeightField& w, double alpha,
                                         double dt)
    : state_(std::move(initial)), weight_(w), alpha_(alpha), dt_(dt) {
  if (!(state_.u.grid == state_.ut.grid) || !(state_.u.grid == w.grid)) {
    throw ShapeError("integrator state and weight differ in grid");
  }
  if (alpha < 0.0) throw DomainError("nonlinearity power alpha must be >= 0");
  check_step(state_.u.grid, dt);
  accel_ = acceleration(state_.u);
}

Field ReferenceIntegrator::acceleration(const Field& u) const {
  return verlet_acceleration(u, weight_, alpha_);
}

void ReferenceIntegrator::step() {
  state_.ut.axpy(0.5 * dt_, accel_);
  state_.u.axpy(dt_, state_.ut);
  accel_ = acceleration(state_.u);
  state_.ut.axpy(0.5 * dt_, accel_);
  ++steps_;
  if (!state_.u.all_finite()) {
    throw PropagationError("reference integrator produced non-finite values at step " +
                           std::to_string(steps_));
  }
}

void ReferenceIntegrator::advance_to(double t) {
  const long target = std::lround(t / dt_);
  if (std::abs(target * dt_ - t) > 1e-9 * std::max(1.0, std::abs(t))) {
    throw DomainError("advance_to: t is not a multiple of dt");
  }
  while (steps_ < target) step();
}

EnergyRecord ReferenceIntegrator::current_energy() const {
  return energy(state_.u, state_.ut, weight_, alpha_, time());
}

}  // namespace wavelab
