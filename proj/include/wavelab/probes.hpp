#pragma once

// Bounded-ratio probes: each "A ≲ B" inequality is sampled over a family of
// smooth radial test functions and the ratio A/B is tracked.  An inequality
// passes when the maximal ratio shows no growth as the sample count is
// quadrupled.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "wavelab/exponents.hpp"
#include "wavelab/grid.hpp"
#include "wavelab/trajectory.hpp"

namespace wavelab {

enum class ProbeName {
  strichartz,           // (a) W(I; L^2) of a free wave vs ‖φ‖_{Ḣ^1} + ‖ψ‖_{L^2}
  besov_embedding,      // (b) Ḃ^0_{6,2} vs Ḃ^1_{2,2}
  product_rule,         // (c) ‖D^s(fg)‖_2 vs ‖f‖_4‖D^s g‖_4 + ‖D^s f‖_4‖g‖_4
  chain_rule,           // (d) ‖D^s G(u)‖_2 vs ‖G'(u)‖_4‖D^s u‖_4
  nonlinear,            // (e) ‖w|u|^α u‖_{L^1 L^2} vs (T^θ1 + T^θ2) W(I; L^2)^{α+1}
  nonlinear_hs,         // (e) with D^s on both sides
  gagliardo_nirenberg,  // (f) ‖φ‖_{p+1}^{p+1} vs ‖∇φ‖_2^2 ‖φ‖_{Ḣ^σ}^{p-1}, σ = 3/2 - 2/(p-1)
};

std::string_view to_string(ProbeName p);
ProbeName parse_probe_name(std::string_view s);
const std::vector<ProbeName>& all_probes();

enum class SampleFamily { gaussian, shell, bandlimited, mixed };
std::string_view to_string(SampleFamily f);
SampleFamily parse_sample_family(std::string_view s);

/// Uniform double in [0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& rng);
/// Generator for sample i; independent of how many samples are drawn.
std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index);

/// One radial test function from `family`; `description` receives its parameters.
Field sample_field(const GridSpec& g, SampleFamily family, std::mt19937_64& rng,
                   std::string* description = nullptr);

struct ProbeSpec {
  ProbeName name = ProbeName::strichartz;
  SampleFamily family = SampleFamily::mixed;
  int samples = 100;
  std::uint64_t seed = 1;
  GridSpec grid{GridMode::radial1d, 1024, 64.0};
  exponents::Params params;  // α, b, s
  std::optional<Rational> gamma;
  double T = 1.0;
  int snapshots = 33;
  double gn_p = 3.0;
  bool zero_velocity = false;  // trajectory probes: draw ψ ≡ 0
  double s_rule = 0.5;  // fractional index of the product/chain rules
};

struct ProbeSample {
  std::string description;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct RatioProbeReport {
  ProbeName name = ProbeName::strichartz;
  std::string family;
  std::uint64_t seed = 0;
  std::vector<ProbeSample> samples;
  double max_ratio = 0.0;
  int violations = 0;  // rhs = 0 with lhs > 0, or non-finite values

  std::size_t count() const { return samples.size(); }
  double max_ratio_prefix(std::size_t n) const;
};

/// Throws DomainError when the probe's index conditions fail (e.g. a
/// negative Sobolev index in the Gagliardo-Nirenberg chain).
void validate_probe(const ProbeSpec& spec);

RatioProbeReport probe_inequality(const ProbeSpec& spec);

struct BoundedRatioResult {
  RatioProbeReport report;  // computed on 4·samples
  double max_small = 0.0;   // over the first `samples`
  double max_large = 0.0;   // over all 4·samples
  double slope = 0.0;       // ln(max_large/max_small) / ln 4
  bool pass = false;        // slope <= 0.05 and no violations
};

BoundedRatioResult bounded_ratio_test(ProbeSpec spec);

struct DilationResult {
  std::vector<double> lambdas;
  std::vector<double> ratios;
  double drift = 0.0;  // max |ratio_λ / ratio_1 - 1|
};

/// Besov-embedding ratio for the radial profile f(λr), λ ∈ lambdas (must contain 1).
DilationResult besov_dilation(const GridSpec& g, const std::function<double(double)>& f,
                              const std::vector<double>& lambdas);
/// A fixed smooth band-limited radial profile for the dilation sweep.
double dilation_profile(double r);

/// ‖D^s(w|u|^α u)‖_{L^1(I; L^2)} on the snapshot grid of traj (s = 0: no D^s).
double nonlinear_l1l2(const Trajectory& traj, double b, double epsilon, double alpha, double s);

}  // namespace wavelab
