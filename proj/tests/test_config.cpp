#include <gtest/gtest.h>

#include "wavelab/config.hpp"
#include "wavelab/error.hpp"

using namespace wavelab;

namespace {

std::string error_of(const std::string& text, std::string_view sub = "") {
  try {
    auto cfg = parse_config(text);
    if (!sub.empty()) validate_config(cfg, sub);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Config, EmptyFileGivesDefaults) {
  const auto cfg = parse_config("# nothing here\n\n");
  EXPECT_EQ(cfg.grid.n, 512);
  EXPECT_EQ(cfg.params.alpha, Rational(1));
  EXPECT_FALSE(cfg.seed.has_value());
  EXPECT_EQ(cfg.echo().size(), config_keys().size());
}

TEST(Config, ParsesTypedValues) {
  const auto cfg = parse_config(
      "grid.mode = full3d   # cube\n"
      "grid.n = 32\n"
      "eq.b = 1/4\n"
      "eq.epsilon = 0.05\n"
      "picard.pair_set = inf:2, 4:4\n"
      "probes.seed = 18446744073709551615\n"
      "output.formats = csv, svg\n");
  EXPECT_EQ(cfg.grid.mode, GridMode::full3d);
  EXPECT_EQ(cfg.params.b, Rational(1, 4));
  EXPECT_EQ(*cfg.epsilon, 0.05);
  EXPECT_EQ(cfg.pairs().size(), 2u);
  EXPECT_EQ(*cfg.seed, 18446744073709551615ull);
  EXPECT_TRUE(cfg.svg);
}

TEST(Config, UnknownKeyRejected) {
  const auto e = error_of("eq.alphaa = 1\n");
  EXPECT_NE(e.find("line 1"), std::string::npos);
  EXPECT_NE(e.find("unknown key 'eq.alphaa'"), std::string::npos);
}

TEST(Config, AllErrorsReported) {
  const auto e = error_of("grid.n = x\n\neq.alphaa = 1\nno equals sign\ngrid.n = 64\n");
  EXPECT_NE(e.find("line 1"), std::string::npos);
  EXPECT_NE(e.find("line 3"), std::string::npos);
  EXPECT_NE(e.find("line 4"), std::string::npos);
  EXPECT_NE(e.find("line 5: duplicate"), std::string::npos);
}

TEST(Config, EligibilityEnforcedAtLoad) {
  const auto e = error_of("eq.alpha = 2\neq.b = 1\n", "picard");
  EXPECT_NE(e.find("alpha < (4-2b)/3 violated"), std::string::npos);
  // check-exponents reports rather than rejects
  EXPECT_EQ(error_of("eq.alpha = 2\neq.b = 1\n", "check-exponents"), "");
}

TEST(Config, ProbeSeedIsMandatory) {
  EXPECT_NE(error_of("eq.b = 1/4\n", "probe").find("probes.seed"), std::string::npos);
  EXPECT_EQ(error_of("eq.b = 1/4\nprobes.seed = 3\n", "probe"), "");
}

TEST(Config, StabilityAndBoxChecks) {
  EXPECT_NE(error_of("time.dt = 0.1\n", "simulate").find("stability"), std::string::npos);
  EXPECT_NE(error_of("eq.b = 1/4\ntime.T = 20\n", "picard").find("box too small"), std::string::npos);
  EXPECT_NE(error_of("grid.mode = full3d\ngrid.n = 16\neq.epsilon = 0\n", "simulate").find("radial1d"),
            std::string::npos);
  EXPECT_NE(error_of("picard.pair_set = 2:2\neq.b = 1/4\n", "picard").find("optimal"), std::string::npos);
}

TEST(Config, EchoRoundTrips) {
  const auto cfg = parse_config("eq.b = 1/4\ntime.T = 0.75\nprobes.seed = 9\ndata.kind = shell\n");
  std::string text;
  for (const auto& [k, v] : cfg.echo()) {
    if (v == "auto" && (k == "eq.epsilon" || k == "eq.gamma" || k == "picard.a_policy")) {
      text += k + " = auto\n";
    } else if (k == "probes.seed" && v == "none") {
      continue;
    } else {
      text += k + " = " + v + "\n";
    }
  }
  EXPECT_EQ(parse_config(text).echo(), cfg.echo());
}

TEST(Config, DataGenerators) {
  auto cfg = parse_config("data.kind = gaussian\ndata.amplitude = 2\ndata.velocity_amplitude = 0.5\n");
  auto [phi, psi] = make_data(cfg);
  EXPECT_DOUBLE_EQ(phi.values[cfg.grid.origin_index()], 2.0);
  EXPECT_DOUBLE_EQ(psi.values[cfg.grid.origin_index()], 0.5);
  EXPECT_LT(support_radius(phi), 7.0);
  EXPECT_EQ(support_radius(Field(cfg.grid)), 0.0);
}
