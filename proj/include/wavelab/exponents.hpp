#pragma once

// Exact exponent bookkeeping for the inhomogeneous wave equation
//   u_tt - Δu + |x|^{-b} |u|^α u = 0   on R^n (n = 3 in every experiment).
//
// Everything here is exact rational arithmetic.  Boundary cases of the
// strict parameter inequalities are decided, never approximated.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wavelab/rational.hpp"

namespace wavelab::exponents {

struct Params {
  Rational alpha{1};
  Rational b{1, 2};
  Rational s{0};
  int n = 3;
};

/// alpha > 0, b > 0, s >= 0, n >= 2.  Returns one message per violation.
std::vector<std::string> params_invariant_violations(const Params& p);

enum class Theorem {
  local_l2,           // t1.1: local well-posedness in H^1 x L^2
  global_small_data,  // t1.2: global well-posedness for small data
  local_hs,           // t1.3: local well-posedness in H^{s+1} x H^s
};

Theorem parse_theorem(std::string_view tag);
std::string_view theorem_tag(Theorem t);

/// γ(r) = (n-1)(1/2 - 1/r); r = inf maps to 1/r = 0.  Throws DomainError for r < 2.
Rational gamma_of(const ExtRational& r, int n);

/// Time/space exponent pair (q, r).  Norms built from it use the spatial
/// exponent 3r, i.e. ‖u‖_{L^q_t L^{3r}_x}.
struct AdmissiblePair {
  ExtRational q;
  ExtRational r;
  int n = 3;
  /// (n-1)(1/2 - 1/r) evaluated without the r >= 2 precondition, so that
  /// the optimality identity can be checked for any candidate.
  Rational gamma_r;

  static AdmissiblePair make(const ExtRational& q, const ExtRational& r, int n = 3);
  ExtRational spatial_exponent() const;
  std::string to_string() const;
};

bool operator==(const AdmissiblePair& a, const AdmissiblePair& b);

enum class PairStatus { not_admissible, admissible, optimal };
std::string_view to_string(PairStatus s);

struct PairClassification {
  PairStatus status = PairStatus::not_admissible;
  /// Inequalities that failed, in textual form.  Empty unless rejected.
  std::vector<std::string> failed;
};

PairClassification classify_pair(const AdmissiblePair& pair);

/// (4 - α)/2.  Requires (α, b) to be eligible for the t1.1 local theory.
Rational theta1(const Rational& alpha, const Rational& b);

struct Theta2 {
  Rational value;
  bool positive = false;
};

/// (αγ + 4γ - 6) / (2γ(α+1)) for the Lebesgue exponent γ ∈ (2, n/b).
Theta2 theta2(const Rational& alpha, const Rational& gamma, const Rational& b, int n = 3);

/// Midpoint of (2, n/b); used when no Lebesgue exponent is supplied.
Rational default_gamma(const Rational& b, int n = 3);

struct SignAnomaly {
  int pair_index = 0;  // 1 or 2
  ExtRational q;
  std::string note;
};

struct NonlinearEstimatePairs {
  AdmissiblePair first;   // (2(α+1)/(α-2), 2(α+1)/3)
  AdmissiblePair second;  // (2γ(α+1)/((α-2)γ+6), 2γ(α+1)/(3(γ-2)))
  PairClassification first_class;
  PairClassification second_class;
  bool first_identity = false;   // 2/q == γ(r) at this α
  bool second_identity = false;  // 2/q == γ(r) at this (α, γ)
  std::vector<SignAnomaly> anomalies;
};

/// The two pairs invoked by the L^1_t L^2_x nonlinear estimate.  A negative
/// (or sub-2) time exponent is reported as an anomaly rather than rejected.
NonlinearEstimatePairs estimate_pairs(const Rational& alpha, const Rational& gamma,
                                     const Rational& b);

struct SymbolicIdentities {
  bool first_pair = false;   // in α
  bool second_pair = false;  // in α, γ
  bool hs_pair = false;      // in α, s, p2 (the H^s-mode estimate)
  std::string first_residual;
  std::string second_residual;
  std::string hs_residual;
};

/// Verifies the optimality identities as polynomial identities after
/// clearing denominators.
SymbolicIdentities verify_symbolic_identities(int n = 3);

/// Hölder splitting exponents for the H^s-mode nonlinear estimate.
struct HoelderSplit {
  Rational gamma_lebesgue;
  Rational r1, p1;  // 1/2 = 1/r1 + 1/p1, weight D^s|x|^{-b} ∈ L^{r1}(B)
  Rational r2, p2;  // 1/2 = 1/r2 + 1/p2, weight |x|^{-b} ∈ L^{r2}(B)
  Rational p2_lower_bound;
  AdmissiblePair hs_pair;
  PairClassification hs_pair_class;
  bool gamma_weight_finite = false;  // b·γ < n
  bool r1_weight_finite = false;     // (b+s)·r1 < n
  bool r2_weight_finite = false;     // b·r2 < n
};

/// p2 is fixed one unit above its lower bound max{6/(α+1-2sα), 6/(3-2b)}.
HoelderSplit hoelder_split(const Params& p, std::optional<Rational> gamma = std::nullopt);

struct Check {
  std::string hypothesis;
  bool passed = false;
};

struct EligibilityReport {
  Theorem theorem = Theorem::local_l2;
  std::vector<Check> checks;
  std::vector<std::string> auxiliary;
  bool passed() const;
  std::vector<std::string> violations() const;
};

EligibilityReport validate_params(const Params& p, Theorem theorem);

/// {(inf,2), (4,4)} plus each nonlinear-estimate pair that is optimal
/// (in particular has q > 0).  Duplicates are dropped.
std::vector<AdmissiblePair> default_pair_set(const Rational& alpha, const Rational& b,
                                             const Rational& gamma, int n = 3);

/// Parses "inf:2, 4:4" style pair lists.
std::vector<AdmissiblePair> parse_pair_set(std::string_view text, int n = 3);

struct ThetaSweep {
  int samples = 0;
  int theta1_nonpositive = 0;
  int theta2_nonpositive = 0;
  int subcondition_failures = 0;  // αγ + 4γ <= 6 inside the eligible region
  int anomalies = 0;              // first nonlinear-estimate pair with q < 2
  bool identities_hold = true;    // pointwise 2/q == γ(r) for both pairs
};

/// Exact check of θ1 > 0, θ2 > 0 and the pair identities over a rational
/// grid of eligible (α, γ) at fixed b.
ThetaSweep theta_sweep(const Rational& b, int alpha_points, int gamma_points, int n = 3);

}  // namespace wavelab::exponents
