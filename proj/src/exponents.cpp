#include "wavelab/exponents.hpp"

#include <algorithm>
#include <sstream>

#include "wavelab/error.hpp"
#include "wavelab/polynomial.hpp"

namespace wavelab::exponents {
namespace {

Rational half() { return Rational(1, 2); }

// mpq comparisons assume canonical form; callers may pass e.g. mpq_class(5, 10).
Rational canon(Rational r) {
  r.canonicalize();
  return r;
}

Params canon(Params p) {
  p.alpha.canonicalize();
  p.b.canonicalize();
  p.s.canonicalize();
  return p;
}

Rational max_alpha_t11(const Rational& b) { return Rational((4 - 2 * b) / 3); }

std::string show(const Rational& r) { return wavelab::to_string(r); }

void require_t11(const Rational& alpha, const Rational& b) {
  std::vector<std::string> violated;
  if (!(b > 0)) violated.push_back("b > 0 violated (b = " + show(b) + ")");
  if (!(b < 2)) violated.push_back("b < 2 violated (b = " + show(b) + ")");
  if (!(alpha > 0)) violated.push_back("alpha > 0 violated (alpha = " + show(alpha) + ")");
  if (!(alpha < max_alpha_t11(b))) {
    violated.push_back("alpha < (4-2b)/3 violated (alpha = " + show(alpha) +
                       ", (4-2b)/3 = " + show(max_alpha_t11(b)) + ")");
  }
  if (!violated.empty()) {
    std::string msg = "parameters outside the local H^1 x L^2 range: ";
    for (std::size_t i = 0; i < violated.size(); ++i) {
      msg += (i ? "; " : "") + violated[i];
    }
    throw EligibilityError(msg);
  }
}

void require_gamma(const Rational& gamma, const Rational& b, int n) {
  if (!(b > 0)) throw DomainError("Lebesgue exponent needs b > 0");
  Rational upper(Rational(n) / b);
  if (!(gamma > 2) || !(gamma < upper)) {
    throw DomainError("Lebesgue exponent gamma = " + show(gamma) + " outside (2, " +
                      show(upper) + ")");
  }
}

// Time exponent from its reciprocal; 1/q = 0 means q = inf.
ExtRational q_from_reciprocal(const Rational& inv) { return ExtRational::from_reciprocal(inv); }

}  // namespace

std::vector<std::string> params_invariant_violations(const Params& p_in) {
  const Params p = canon(p_in);
  std::vector<std::string> out;
  if (!(p.alpha > 0)) out.push_back("alpha > 0 required (alpha = " + show(p.alpha) + ")");
  if (!(p.b > 0)) out.push_back("b > 0 required (b = " + show(p.b) + ")");
  if (p.s < 0) out.push_back("s >= 0 required (s = " + show(p.s) + ")");
  if (p.n < 2) out.push_back("n >= 2 required (n = " + std::to_string(p.n) + ")");
  return out;
}

Theorem parse_theorem(std::string_view tag) {
  if (tag == "t1.1") return Theorem::local_l2;
  if (tag == "t1.2") return Theorem::global_small_data;
  if (tag == "t1.3") return Theorem::local_hs;
  throw DomainError("unknown theorem tag '" + std::string(tag) + "' (expected t1.1|t1.2|t1.3)");
}

std::string_view theorem_tag(Theorem t) {
  switch (t) {
    case Theorem::local_l2: return "t1.1";
    case Theorem::global_small_data: return "t1.2";
    case Theorem::local_hs: return "t1.3";
  }
  return "?";
}

Rational gamma_of(const ExtRational& r, int n) {
  if (r < ExtRational(2)) {
    throw DomainError("gamma(r) needs r >= 2 (r = " + r.to_string() + ")");
  }
  return Rational((n - 1) * (half() - r.reciprocal()));
}

AdmissiblePair AdmissiblePair::make(const ExtRational& q, const ExtRational& r, int n) {
  AdmissiblePair p;
  p.q = q;
  p.r = r;
  p.n = n;
  p.gamma_r = Rational((n - 1) * (half() - r.reciprocal()));
  return p;
}

ExtRational AdmissiblePair::spatial_exponent() const {
  if (r.is_infinite()) return ExtRational::infinity();
  return ExtRational(Rational(3 * r.value()));
}

std::string AdmissiblePair::to_string() const {
  return "(" + q.to_string() + ", " + r.to_string() + ")";
}

bool operator==(const AdmissiblePair& a, const AdmissiblePair& b) {
  return a.q == b.q && a.r == b.r && a.n == b.n;
}

std::string_view to_string(PairStatus s) {
  switch (s) {
    case PairStatus::not_admissible: return "not_admissible";
    case PairStatus::admissible: return "admissible";
    case PairStatus::optimal: return "optimal";
  }
  return "?";
}

PairClassification classify_pair(const AdmissiblePair& pair) {
  PairClassification c;
  const ExtRational two(2);
  if (pair.q < two) c.failed.push_back("q >= 2 (q = " + pair.q.to_string() + ")");
  if (pair.r < two) c.failed.push_back("r >= 2 (r = " + pair.r.to_string() + ")");
  if (!c.failed.empty()) return c;

  const Rational two_over_q(2 * pair.q.reciprocal());
  const Rational& g = pair.gamma_r;
  if (pair.q == two && pair.r.is_infinite() && g == 1) {
    c.failed.push_back("(q, r, gamma(r)) != (2, inf, 1)");
  }
  if (two_over_q < 0) c.failed.push_back("0 <= 2/q");
  if (two_over_q > g) {
    c.failed.push_back("2/q <= gamma(r) (2/q = " + show(two_over_q) + ", gamma(r) = " +
                       show(g) + ")");
  }
  if (g > 1) c.failed.push_back("gamma(r) <= 1 (gamma(r) = " + show(g) + ")");
  if (!c.failed.empty()) return c;
  c.status = two_over_q == g ? PairStatus::optimal : PairStatus::admissible;
  return c;
}

Rational theta1(const Rational& alpha_in, const Rational& b_in) {
  const Rational alpha = canon(alpha_in), b = canon(b_in);
  require_t11(alpha, b);
  Rational t((4 - alpha) / 2);
  if (!(t > 0)) throw DomainError("theta1 not positive; eligibility bookkeeping is broken");
  return t;
}

Theta2 theta2(const Rational& alpha_in, const Rational& gamma_in, const Rational& b_in, int n) {
  const Rational alpha = canon(alpha_in), gamma = canon(gamma_in), b = canon(b_in);
  require_gamma(gamma, b, n);
  if (!(alpha > 0)) throw DomainError("theta2 needs alpha > 0");
  Theta2 out;
  out.value = Rational((alpha * gamma + 4 * gamma - 6) / (2 * gamma * (alpha + 1)));
  out.positive = out.value > 0;
  return out;
}

Rational default_gamma(const Rational& b_in, int n) {
  const Rational b = canon(b_in);
  if (!(b > 0)) throw DomainError("default gamma needs b > 0");
  return Rational((2 + Rational(n) / b) / 2);
}

NonlinearEstimatePairs estimate_pairs(const Rational& alpha_in, const Rational& gamma_in,
                                     const Rational& b_in) {
  const Rational alpha = canon(alpha_in), gamma = canon(gamma_in), b = canon(b_in);
  constexpr int n = 3;
  require_t11(alpha, b);
  require_gamma(gamma, b, n);

  NonlinearEstimatePairs out;
  // First pair: q = 2(α+1)/(α-2), r = 2(α+1)/3.
  Rational inv_q1((alpha - 2) / (2 * (alpha + 1)));
  Rational r1(2 * (alpha + 1) / 3);
  out.first = AdmissiblePair::make(q_from_reciprocal(inv_q1), ExtRational(r1), n);
  // Second pair: q = 2γ(α+1)/((α-2)γ+6), r = 2γ(α+1)/(3(γ-2)).
  Rational inv_q2(((alpha - 2) * gamma + 6) / (2 * gamma * (alpha + 1)));
  Rational r2(2 * gamma * (alpha + 1) / (3 * (gamma - 2)));
  out.second = AdmissiblePair::make(q_from_reciprocal(inv_q2), ExtRational(r2), n);

  out.first_identity = Rational(2 * inv_q1) == out.first.gamma_r;
  out.second_identity = Rational(2 * inv_q2) == out.second.gamma_r;
  out.first_class = classify_pair(out.first);
  out.second_class = classify_pair(out.second);

  auto flag = [&](int index, const Rational& inv_q, const AdmissiblePair& p) {
    if (inv_q < 0) {
      out.anomalies.push_back({index, p.q, "time exponent q = " + p.q.to_string() +
                                               " is negative; pair cannot be admissible"});
    } else if (p.q < ExtRational(2)) {
      out.anomalies.push_back({index, p.q, "time exponent q = " + p.q.to_string() + " < 2"});
    }
  };
  flag(1, inv_q1, out.first);
  flag(2, inv_q2, out.second);
  return out;
}

SymbolicIdentities verify_symbolic_identities(int n) {
  SymbolicIdentities out;
  using RF = RationalFunction;
  const auto c = [](int vars, const Rational& v) { return RF::constant(vars, v); };

  // Both pairs of the L^2-level estimate, in variables (α, γ).
  {
    const int v = 2;
    RF a = RF::variable(v, 0);
    RF g = RF::variable(v, 1);
    RF one = c(v, 1), two = c(v, 2), three = c(v, 3), six = c(v, 6);
    RF gamma_fn = c(v, n - 1);
    auto gamma_r = [&](const RF& r) { return gamma_fn * (c(v, half()) - one / r); };

    RF q1 = two * (a + one) / (a - two);
    RF r1 = two * (a + one) / three;
    RF lhs1 = two / q1, rhs1 = gamma_r(r1);
    out.first_pair = identical(lhs1, rhs1);
    out.first_residual = (lhs1.numerator() * rhs1.denominator() -
                          rhs1.numerator() * lhs1.denominator())
                             .to_string({"alpha", "gamma"});

    RF q2 = two * g * (a + one) / ((a - two) * g + six);
    RF r2 = two * g * (a + one) / (three * (g - two));
    RF lhs2 = two / q2, rhs2 = gamma_r(r2);
    out.second_pair = identical(lhs2, rhs2);
    out.second_residual = (lhs2.numerator() * rhs2.denominator() -
                           rhs2.numerator() * lhs2.denominator())
                              .to_string({"alpha", "gamma"});
  }
  // H^s-mode pair, in variables (α, s, p2), spatial exponent 3r.
  {
    const int v = 3;
    RF a = RF::variable(v, 0);
    RF s = RF::variable(v, 1);
    RF p2 = RF::variable(v, 2);
    RF one = c(v, 1), two = c(v, 2), three = c(v, 3), six = c(v, 6);
    RF base = one + one / a;
    RF q = two * base / (base - six / (a * p2) - two * s);
    RF r = base / (three / (a * p2) + s);
    RF lhs = two / q;
    RF rhs = c(v, n - 1) * (c(v, half()) - one / r);
    out.hs_pair = identical(lhs, rhs);
    out.hs_residual = (lhs.numerator() * rhs.denominator() -
                       rhs.numerator() * lhs.denominator())
                          .to_string({"alpha", "s", "p2"});
  }
  return out;
}

HoelderSplit hoelder_split(const Params& p_in, std::optional<Rational> gamma) {
  const Params p = canon(p_in);
  if (gamma) gamma->canonicalize();
  HoelderSplit h;
  const Rational& a = p.alpha;
  const Rational& b = p.b;
  const Rational& s = p.s;
  h.gamma_lebesgue = gamma ? *gamma : default_gamma(b, p.n);
  h.gamma_weight_finite = b * h.gamma_lebesgue < p.n;

  Rational d1(a + 1 - 2 * s * a);
  Rational d2(3 - 2 * b);
  if (!(d1 > 0) || !(d2 > 0)) {
    throw DomainError("H^s splitting needs alpha + 1 - 2 s alpha > 0 and 3 - 2b > 0");
  }
  h.p2_lower_bound = std::max(Rational(6 / d1), Rational(6 / d2));
  h.p2 = h.p2_lower_bound + 1;
  h.r2 = Rational(1 / (half() - 1 / h.p2));
  h.r2_weight_finite = b * h.r2 < p.n;

  Rational r1_upper(Rational(p.n) / (b + s));
  h.r1 = r1_upper > 2 ? Rational((2 + r1_upper) / 2) : Rational(2);
  h.r1_weight_finite = (b + s) * h.r1 < p.n;
  h.p1 = h.r1 > 2 ? Rational(1 / (half() - 1 / h.r1)) : Rational(0);

  // Time/space pair of the H^s-level bound on the |x|^{-b} D^s(|u|^α u) piece.
  Rational base(1 + 1 / a);
  Rational inv_q((base - 6 / (a * h.p2) - 2 * s) / (2 * base));
  Rational r(base / (3 / (a * h.p2) + s));
  h.hs_pair = AdmissiblePair::make(ExtRational::from_reciprocal(inv_q), ExtRational(r), p.n);
  h.hs_pair_class = classify_pair(h.hs_pair);
  return h;
}

bool EligibilityReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::vector<std::string> EligibilityReport::violations() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(c.hypothesis + " violated");
  }
  return out;
}

EligibilityReport validate_params(const Params& p_in, Theorem theorem) {
  const Params p = canon(p_in);
  EligibilityReport rep;
  rep.theorem = theorem;
  auto add = [&](std::string text, bool ok) { rep.checks.push_back({std::move(text), ok}); };
  const Rational& a = p.alpha;
  const Rational& b = p.b;
  const Rational& s = p.s;

  add("n = 3", p.n == 3);
  if (theorem == Theorem::local_hs) {
    add("b > 1/2", b > half());
    add("b < 3/2", b < Rational(3, 2));
    add("s > 0", s > 0);
    add("s < b - 1/2", s < b - half());
    add("alpha > 0", a > 0);
    Rational bound = 3 - 2 * s != 0 ? Rational((4 - 2 * b) / (3 - 2 * s)) : Rational(0);
    add("alpha < (4-2b)/(3-2s)", 3 - 2 * s > 0 && a < bound);
    rep.auxiliary.push_back("(4-2b)/(3-2s) = " + show(bound));
    Rational weight(b + s);
    rep.auxiliary.push_back("fractional weight |x|^{-(b+s)} with b+s = " + show(weight) +
                            (2 * weight < 3 ? " is square integrable near 0 (2(b+s) < 3)"
                                            : " is NOT square integrable near 0 (2(b+s) >= 3)"));
  } else {
    add("b > 0", b > 0);
    add("b < 2", b < 2);
    add("alpha > 0", a > 0);
    add("alpha < (4-2b)/3", a < max_alpha_t11(b));
    rep.auxiliary.push_back("(4-2b)/3 = " + show(max_alpha_t11(b)));
  }
  return rep;
}

std::vector<AdmissiblePair> default_pair_set(const Rational& alpha, const Rational& b,
                                             const Rational& gamma, int n) {
  std::vector<AdmissiblePair> set{
      AdmissiblePair::make(ExtRational::infinity(), ExtRational(2), n),
      AdmissiblePair::make(ExtRational(4), ExtRational(4), n)};
  auto pairs = estimate_pairs(alpha, gamma, b);
  auto consider = [&](const AdmissiblePair& p, const PairClassification& c) {
    if (c.status != PairStatus::optimal) return;
    if (std::find(set.begin(), set.end(), p) == set.end()) set.push_back(p);
  };
  consider(pairs.first, pairs.first_class);
  consider(pairs.second, pairs.second_class);
  return set;
}

std::vector<AdmissiblePair> parse_pair_set(std::string_view text, int n) {
  std::vector<AdmissiblePair> out;
  std::string item;
  std::istringstream is{std::string(text)};
  while (std::getline(is, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw DomainError("pair '" + item + "' is not of the form q:r");
    }
    out.push_back(AdmissiblePair::make(ExtRational::parse(item.substr(0, colon)),
                                       ExtRational::parse(item.substr(colon + 1)), n));
  }
  if (out.empty()) throw DomainError("empty pair set");
  return out;
}

ThetaSweep theta_sweep(const Rational& b_in, int alpha_points, int gamma_points, int n) {
  const Rational b = canon(b_in);
  ThetaSweep out;
  const Rational amax = max_alpha_t11(b);
  const Rational gmax(Rational(n) / b);
  for (int i = 1; i <= alpha_points; ++i) {
    Rational a(amax * Rational(i, alpha_points + 1));
    a.canonicalize();
    if (!(theta1(a, b) > 0)) ++out.theta1_nonpositive;
    for (int j = 1; j <= gamma_points; ++j) {
      Rational g(2 + (gmax - 2) * Rational(j, gamma_points + 1));
      g.canonicalize();
      ++out.samples;
      if (!(a * g + 4 * g > 6)) ++out.subcondition_failures;
      if (!theta2(a, g, b, n).positive) ++out.theta2_nonpositive;
      auto pairs = estimate_pairs(a, g, b);
      out.identities_hold = out.identities_hold && pairs.first_identity && pairs.second_identity;
      if (j == 1 && !pairs.anomalies.empty() && pairs.anomalies.front().pair_index == 1) {
        ++out.anomalies;
      }
    }
  }
  return out;
}

}  // namespace wavelab::exponents
