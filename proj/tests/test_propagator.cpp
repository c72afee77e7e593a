#include <gtest/gtest.h>

#include <cmath>

#include "wavelab/propagator.hpp"

using namespace wavelab;

namespace {

double max_diff(const Field& a, const Field& b) {
  double e = 0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a.values[i] - b.values[i]));
  return e;
}

GridSpec radial() { return {GridMode::radial1d, 512, 32.0}; }

// smooth radial profiles only: odd powers of r would put a cusp at the origin
Field bump(const GridSpec& g, double amp = 1.0, double width = 1.0) {
  return Field::from_radial(g, [=](double r) { return amp * std::exp(-r * r / (width * width)); });
}

}  // namespace

TEST(Propagator, PlaneWave3d) {
  const GridSpec g{GridMode::full3d, 16, 2 * std::acos(-1.0)};
  const double kx = 2, ky = 1, kz = 3, k = std::sqrt(14.0);
  const auto phi = Field::from_function(g, [&](double x, double y, double z) { return std::cos(kx * x + ky * y + kz * z); });
  const auto psi = Field::from_function(g, [&](double x, double y, double z) { return std::sin(kx * x + ky * y + kz * z); });
  const double t = 5.0;
  const auto s = linear_solve(phi, psi, t);
  const auto exact = Field::from_function(g, [&](double x, double y, double z) {
    const double p = kx * x + ky * y + kz * z;
    return std::cos(k * t) * std::cos(p) + std::sin(k * t) / k * std::sin(p);
  });
  EXPECT_LT(max_diff(s.u, exact), 1e-11);
}

TEST(Propagator, TimeDerivativeMatchesFiniteDifference) {
  const auto g = radial();
  const auto phi = bump(g), psi = bump(g, 0.5, 1.0);
  const double t = 1.3, h = 1e-4;
  const auto s = linear_solve(phi, psi, t);
  const auto up = linear_solve(phi, psi, t + h).u, um = linear_solve(phi, psi, t - h).u;
  Field fd = up - um;
  fd *= 1.0 / (2 * h);
  EXPECT_LT(max_diff(fd, s.ut), 1e-7);
}

TEST(Propagator, GroupPropertyAndReversal) {
  const auto g = radial();
  const auto phi = bump(g), psi = bump(g, -0.3, 0.5);
  const auto a = linear_solve(phi, psi, 0.7);
  const auto ab = linear_solve(a.u, a.ut, 1.1);
  const auto direct = linear_solve(phi, psi, 1.8);
  EXPECT_LT(max_diff(ab.u, direct.u), 1e-11);
  EXPECT_LT(max_diff(ab.ut, direct.ut), 1e-11);

  const auto back = linear_solve(direct.u, -1.0 * Field(direct.ut), 1.8);
  EXPECT_LT(max_diff(back.u, phi), 1e-11);
  EXPECT_LT(max_diff(-1.0 * Field(back.ut), psi), 1e-11);
}

// h(τ) = f constant in time:  G(t) = (1 - cos|ξ|t)/|ξ|^2 f̂
TEST(Propagator, DuhamelManufactured) {
  const auto g = radial();
  const auto f = bump(g);
  const double t = 1.5;
  const auto exact = apply_multiplier(f, [t](double xi) {
    return xi == 0 ? t * t / 2 : (1 - std::cos(xi * t)) / (xi * xi);
  });
  const auto num = duhamel([&](double) { return f; }, t, {QuadRule::simpson, 64});
  EXPECT_LT(max_diff(num, exact), 5e-8);

  std::vector<SpectralField> hh(33, forward(f));
  const double dt = t / 32;
  const auto nodes = duhamel_on_nodes(PropagatorPlan(g), hh, dt, QuadRule::simpson);
  EXPECT_EQ(lp_norm(inverse(nodes[0]), 2), 0.0);
  EXPECT_LT(max_diff(inverse(nodes.back()), exact), 1e-6);
}

// h(τ) = cos(τ) f: fourth-order convergence of the node quadrature
TEST(Propagator, DuhamelNodeOrder) {
  const auto g = radial();
  const auto f = bump(g);
  const double t = 2.0;
  const auto exact = duhamel([&](double tau) { return std::cos(tau) * Field(f); }, t, {QuadRule::simpson, 2048});
  std::vector<double> errs;
  for (int S : {17, 33, 65}) {
    std::vector<SpectralField> hh;
    const double dt = t / (S - 1);
    for (int i = 0; i < S; ++i) hh.push_back(forward(std::cos(i * dt) * Field(f)));
    const auto nodes = duhamel_on_nodes(PropagatorPlan(g), hh, dt, QuadRule::simpson);
    errs.push_back(lp_norm(inverse(nodes.back()) - exact, 2));
  }
  EXPECT_GT(std::log2(errs[0] / errs[1]), 3.5);
  EXPECT_GT(std::log2(errs[1] / errs[2]), 3.5);
}
