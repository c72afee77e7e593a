#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "wavelab/error.hpp"
#include "wavelab/grid.hpp"

using namespace wavelab;

namespace {

const double kPi = std::acos(-1.0);

GridSpec radial(int n = 512, double L = 32.0) { return {GridMode::radial1d, n, L}; }
GridSpec cube(int n = 64, double L = 16.0) { return {GridMode::full3d, n, L}; }

Field gaussian(const GridSpec& g) {
  return Field::from_radial(g, [](double r) { return std::exp(-r * r); });
}

}  // namespace

TEST(Grid, RejectsBadShapes) {
  EXPECT_THROW((GridSpec{GridMode::radial1d, 100, 32.0}.validate()), ShapeError);
  EXPECT_THROW((GridSpec{GridMode::radial1d, 4, 32.0}.validate()), ShapeError);
  EXPECT_THROW((GridSpec{GridMode::radial1d, 64, -1.0}.validate()), ShapeError);
  EXPECT_NO_THROW(radial().validate());
}

// ‖e^{-r^2}‖_{L^2(R^3)} = (π/2)^{3/4}
TEST(Grid, GaussianParsevalRadial) {
  const auto f = gaussian(radial());
  const double exact = std::pow(kPi / 2, 0.75);
  EXPECT_NEAR(lp_norm(f, 2), exact, 1e-10);
  EXPECT_NEAR(std::sqrt(spectral_l2_squared(forward(f))), exact, 1e-10);
}

TEST(Grid, GaussianParsevalFull3d) {
  const auto f = gaussian(cube());
  const double exact = std::pow(kPi / 2, 0.75);
  EXPECT_NEAR(lp_norm(f, 2), exact, 1e-10);
  EXPECT_NEAR(std::sqrt(spectral_l2_squared(forward(f))), exact, 1e-10);
}

TEST(Grid, RoundTrip) {
  for (auto g : {radial(), cube(16, 12.0)}) {
    const auto f = gaussian(g);
    const auto back = inverse(forward(f));
    double err = 0;
    for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::abs(back.values[i] - f.values[i]));
    EXPECT_LT(err, 1e-13);
    EXPECT_LT(conjugate_symmetry_defect(forward(f)), 1e-13);
  }
}

// -Δ e^{-r^2} = (6 - 4r^2) e^{-r^2}
TEST(Grid, LaplacianOfGaussian) {
  for (auto g : {radial(), cube()}) {
    const auto f = negative_laplacian(gaussian(g));
    const auto exact = Field::from_radial(g, [](double r) { return (6 - 4 * r * r) * std::exp(-r * r); });
    double err = 0;
    for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::abs(f.values[i] - exact.values[i]));
    EXPECT_LT(err, 1e-9) << to_string(g.mode);
  }
}

// ‖∇e^{-r^2}‖_2^2 = 16π · 3√π / (8 · 2^{5/2})
TEST(Grid, GradientSeminorm) {
  const double exact = 16 * kPi * 3 * std::sqrt(kPi) / (8 * std::pow(2.0, 2.5));
  EXPECT_NEAR(std::pow(sobolev_seminorm(gaussian(radial()), 1.0), 2), exact, 1e-10);
  EXPECT_NEAR(std::pow(sobolev_seminorm(gaussian(cube()), 1.0), 2), exact, 1e-9);
}

TEST(Grid, FractionalDerivativeComposes) {
  const auto f = gaussian(radial());
  const auto d1 = fractional_derivative(fractional_derivative(f, 0.5), 0.5);
  EXPECT_NEAR(sobolev_seminorm(d1, 0.0), sobolev_seminorm(f, 1.0), 1e-10);
  EXPECT_THROW(fractional_derivative(f, -0.5), DomainError);
}

TEST(Grid, LittlewoodPaleyPartitionOfUnity) {
  const auto g = radial();
  const auto range = dyadic_range(g);
  for (double xi = 2 * kPi / g.box_length; xi <= g.max_frequency(); xi *= 1.37) {
    double sum = 0;
    for (int j = range.j_min; j <= range.j_max; ++j) sum += lp_symbol(xi, std::ldexp(1.0, j));
    EXPECT_NEAR(sum, 1.0, 1e-12) << "xi = " << xi;
  }
  EXPECT_EQ(lp_bump(0.5), 1.0);
  EXPECT_EQ(lp_bump(2.5), 0.0);
}

TEST(Grid, ProjectionOutsideBandIsZero) {
  const auto g = radial();
  const auto f = gaussian(g);
  const auto range = dyadic_range(g);
  std::ostringstream sink;
  auto* old = std::clog.rdbuf(sink.rdbuf());
  const auto p = lp_project(f, std::ldexp(1.0, range.j_max + 3));
  std::clog.rdbuf(old);
  EXPECT_EQ(lp_norm(p, 2), 0.0);
  EXPECT_FALSE(sink.str().empty());
}

TEST(Grid, SnapshotRoundTripIsExact) {
  const auto f = gaussian(cube(8, 6.0));
  std::stringstream ss;
  write_snapshot(ss, f, 0.375);
  const auto s = read_snapshot(ss);
  EXPECT_EQ(s.time, 0.375);
  EXPECT_TRUE(s.field.grid == f.grid);
  EXPECT_EQ(s.field.values, f.values);
}

TEST(Grid, LpNormInfinityIsGridMax) {
  const auto f = gaussian(radial());
  EXPECT_EQ(lp_norm(f, INFINITY), 1.0);
}
