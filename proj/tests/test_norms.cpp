#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "wavelab/error.hpp"
#include "wavelab/norms.hpp"
#include "wavelab/trajectory.hpp"

using namespace wavelab;
using exponents::AdmissiblePair;

namespace {

GridSpec radial() { return {GridMode::radial1d, 256, 32.0}; }

Trajectory random_traj(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.3, 2.0);
  const double a = u(rng), w = u(rng), c = u(rng) - 0.3;
  const auto phi = Field::from_radial(radial(), [=](double r) { return a * std::exp(-(r - c) * (r - c) / w); });
  const auto psi = Field::from_radial(radial(), [=](double r) { return c * std::exp(-r * r * w); });
  return linear_trajectory(phi, psi, 1.0, 17);
}

std::vector<AdmissiblePair> pairs() { return exponents::parse_pair_set("inf:2, 4:4"); }

}  // namespace

TEST(Norms, TimeNormOfConstant) {
  std::vector<double> v(17, 3.0);
  EXPECT_NEAR(time_norm(v, ExtRational(2), 1.0 / 16), 3.0, 1e-14);
  EXPECT_EQ(time_norm(v, ExtRational::infinity(), 1.0 / 16), 3.0);
  v[5] = 7.0;
  EXPECT_EQ(time_norm(v, ExtRational::infinity(), 1.0 / 16), 7.0);
}

TEST(Norms, Homogeneity) {
  std::mt19937_64 rng(7);
  const auto tr = random_traj(rng);
  for (double lambda : {-2.5, 0.1, 3.0}) {
    const auto st = scaled(tr, lambda);
    for (const auto& p : pairs()) {
      MixedNormSpec spec{p.q, p.spatial_exponent()};
      const double a = mixed_norm(st, spec), b = std::abs(lambda) * mixed_norm(tr, spec);
      EXPECT_NEAR(a, b, 1e-12 * b);
    }
  }
}

TEST(Norms, TriangleInequality) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const auto a = random_traj(rng), b = random_traj(rng);
    Trajectory sum = a;
    for (std::size_t i = 0; i < sum.size(); ++i) sum.u[i] += b.u[i];
    for (const auto& p : pairs()) {
      MixedNormSpec spec{p.q, p.spatial_exponent()};
      EXPECT_LE(mixed_norm(sum, spec), mixed_norm(a, spec) + mixed_norm(b, spec) + 1e-10);
    }
  }
}

TEST(Norms, WNormIsMaxOverPairs) {
  std::mt19937_64 rng(3);
  const auto tr = random_traj(rng);
  const auto v = pair_norms(tr, pairs());
  EXPECT_DOUBLE_EQ(w_norm(tr, pairs()), std::max(v[0], v[1]));
  EXPECT_THROW(w_norm(tr, {}), ConfigError);
  EXPECT_THROW(require_optimal(exponents::parse_pair_set("2:2")), ConfigError);
}

// Overlapping Littlewood-Paley bumps: Σ_j ψ_j^2 lies in [1/2, 1].
TEST(Besov, ZeroTwoTwoWithinOverlapBand) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    const auto f = random_traj(rng).u[0];
    const double b = besov_norm(f, BesovSpec::on_grid(f.grid, 0.0, 2, 2));
    const double l2 = lp_norm(f, 2);
    EXPECT_GE(b * b, 0.5 * l2 * l2 * (1 - 1e-10));
    EXPECT_LE(b * b, l2 * l2 * (1 + 1e-10));
  }
}

TEST(Besov, RejectsBandOutsideGrid) {
  const auto f = Field::from_radial(radial(), [](double r) { return std::exp(-r * r); });
  auto spec = BesovSpec::on_grid(f.grid, 0.0, 2, 2);
  spec.j_max += 5;
  EXPECT_THROW(besov_norm(f, spec), DomainError);
}
