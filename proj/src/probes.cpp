#include "wavelab/probes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wavelab/dynamics.hpp"
#include "wavelab/error.hpp"
#include "wavelab/norms.hpp"

namespace wavelab {

namespace {

struct NameEntry {
  ProbeName name;
  std::string_view text;
};

constexpr NameEntry kProbeNames[] = {
    {ProbeName::strichartz, "strichartz"},
    {ProbeName::besov_embedding, "besov_embedding"},
    {ProbeName::product_rule, "product_rule"},
    {ProbeName::chain_rule, "chain_rule"},
    {ProbeName::nonlinear, "nonlinear"},
    {ProbeName::nonlinear_hs, "nonlinear_hs"},
    {ProbeName::gagliardo_nirenberg, "gagliardo_nirenberg"},
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

std::string_view to_string(ProbeName p) {
  for (const auto& e : kProbeNames) {
    if (e.name == p) return e.text;
  }
  return "unknown";
}

ProbeName parse_probe_name(std::string_view s) {
  for (const auto& e : kProbeNames) {
    if (e.text == s) return e.name;
  }
  // single-letter aliases a..f, with "e_hs" for the fractional estimate
  if (s == "a") return ProbeName::strichartz;
  if (s == "b") return ProbeName::besov_embedding;
  if (s == "c") return ProbeName::product_rule;
  if (s == "d") return ProbeName::chain_rule;
  if (s == "e") return ProbeName::nonlinear;
  if (s == "e_hs") return ProbeName::nonlinear_hs;
  if (s == "f") return ProbeName::gagliardo_nirenberg;
  throw ConfigError("unknown probe '" + std::string(s) + "'");
}

const std::vector<ProbeName>& all_probes() {
  static const std::vector<ProbeName> v = {
      ProbeName::strichartz,   ProbeName::besov_embedding, ProbeName::product_rule,
      ProbeName::chain_rule,   ProbeName::nonlinear,       ProbeName::nonlinear_hs,
      ProbeName::gagliardo_nirenberg};
  return v;
}

std::string_view to_string(SampleFamily f) {
  switch (f) {
    case SampleFamily::gaussian: return "gaussian";
    case SampleFamily::shell: return "shell";
    case SampleFamily::bandlimited: return "bandlimited";
    case SampleFamily::mixed: return "mixed";
  }
  return "unknown";
}

SampleFamily parse_sample_family(std::string_view s) {
  if (s == "gaussian") return SampleFamily::gaussian;
  if (s == "shell") return SampleFamily::shell;
  if (s == "bandlimited") return SampleFamily::bandlimited;
  if (s == "mixed") return SampleFamily::mixed;
  throw ConfigError("unknown sample family '" + std::string(s) + "'");
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

double j0(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

}  // namespace

Field sample_field(const GridSpec& g, SampleFamily family, std::mt19937_64& rng,
                   std::string* description) {
  if (family == SampleFamily::mixed) {
    const double pick = uniform01(rng);
    family = pick < 1.0 / 3.0   ? SampleFamily::gaussian
             : pick < 2.0 / 3.0 ? SampleFamily::shell
                                : SampleFamily::bandlimited;
  }
  const double sign = uniform01(rng) < 0.5 ? -1.0 : 1.0;
  switch (family) {
    case SampleFamily::gaussian: {
      const double A = sign * uniform(rng, 0.5, 2.0);
      const double w = uniform(rng, 0.5, 3.0);
      const double c = uniform(rng, -0.5, 1.0);
      if (description) {
        *description = "gaussian A=" + fmt(A) + " w=" + fmt(w) + " c=" + fmt(c);
      }
      return Field::from_radial(g, [=](double r) {
        const double q = r * r / (w * w);
        return A * (1.0 + c * q) * std::exp(-q);
      });
    }
    case SampleFamily::shell: {
      const double A = sign * uniform(rng, 0.5, 2.0);
      const double r0 = uniform(rng, 1.0, 5.0);
      const double w = uniform(rng, 0.8, 2.5);
      if (description) {
        *description = "shell A=" + fmt(A) + " r0=" + fmt(r0) + " w=" + fmt(w);
      }
      return Field::from_radial(g, [=](double r) {
        const double d = r * r - r0 * r0;
        return A * std::exp(-d * d / (w * w * w * w));
      });
    }
    case SampleFamily::bandlimited:
    case SampleFamily::mixed: {
      double a[3], k[3];
      for (int m = 0; m < 3; ++m) {
        a[m] = uniform(rng, -1.0, 1.0);
        k[m] = uniform(rng, 0.5, 3.0);
      }
      const double R = uniform(rng, 2.0, 4.0);
      if (description) {
        *description = "bandlimited a=(" + fmt(a[0]) + "," + fmt(a[1]) + "," + fmt(a[2]) +
                       ") k=(" + fmt(k[0]) + "," + fmt(k[1]) + "," + fmt(k[2]) + ") R=" + fmt(R);
      }
      return Field::from_radial(g, [=](double r) {
        double sum = 0.0;
        for (int m = 0; m < 3; ++m) sum += a[m] * j0(k[m] * r);
        return sum * std::exp(-r * r / (R * R));
      });
    }
  }
  throw DomainError("unknown sample family");
}

double RatioProbeReport::max_ratio_prefix(std::size_t n) const {
  double m = 0.0;
  for (std::size_t i = 0; i < std::min(n, samples.size()); ++i) m = std::max(m, samples[i].ratio);
  return m;
}

void validate_probe(const ProbeSpec& spec) {
  spec.grid.validate();
  if (spec.samples < 1) throw DomainError("probe needs at least one sample");
  if (!(spec.T > 0.0)) throw DomainError("probe time T must be positive");
  if (spec.snapshots < 3) throw DomainError("probe needs at least three snapshots");
  if (spec.name == ProbeName::gagliardo_nirenberg) {
    if (!(spec.gn_p > 1.0)) throw DomainError("Gagliardo-Nirenberg exponent p must exceed 1");
    const double sigma = 1.5 - 2.0 / (spec.gn_p - 1.0);
    if (sigma < 0.0) {
      throw DomainError("Gagliardo-Nirenberg chain needs 3/2 - 2/(p-1) >= 0 (p = " +
                        fmt(spec.gn_p) + " gives " + fmt(sigma) + ")");
    }
  }
  if (spec.name == ProbeName::nonlinear || spec.name == ProbeName::nonlinear_hs) {
    exponents::theta1(spec.params.alpha, spec.params.b);  // throws when ineligible
  }
}

double nonlinear_l1l2(const Trajectory& traj, double b, double epsilon, double alpha, double s) {
  traj.validate();
  const auto w = make_weight(traj.grid, b, epsilon);
  std::vector<double> vals;
  vals.reserve(traj.size());
  for (const auto& u : traj.u) {
    Field N = nonlinearity(u, w, alpha);
    vals.push_back(s > 0.0 ? lp_norm(fractional_derivative(N, s), 2.0) : lp_norm(N, 2.0));
  }
  return time_norm(vals, ExtRational(1), traj.step());
}

namespace {

struct Context {
  const ProbeSpec& spec;
  double alpha;
  double b;
  double s;
  std::vector<exponents::AdmissiblePair> pairs;
  double time_factor = 0.0;  // T^θ1 + T^θ2
};

Context make_context(const ProbeSpec& spec) {
  Context c{spec, to_double(spec.params.alpha), to_double(spec.params.b),
            to_double(spec.params.s), {}, 0.0};
  const auto& p = spec.params;
  if (p.b > 0 && p.b < Rational(p.n, 2)) {
    const Rational gamma = spec.gamma ? *spec.gamma : exponents::default_gamma(p.b, p.n);
    c.pairs = exponents::default_pair_set(p.alpha, p.b, gamma, p.n);
    if (spec.name == ProbeName::nonlinear || spec.name == ProbeName::nonlinear_hs) {
      const double th1 = to_double(exponents::theta1(p.alpha, p.b));
      const double th2 = to_double(exponents::theta2(p.alpha, gamma, p.b, p.n).value);
      c.time_factor = std::pow(spec.T, th1) + std::pow(spec.T, th2);
    }
  } else {
    c.pairs = exponents::parse_pair_set("inf:2,4:4", p.n);
  }
  return c;
}

ProbeSample evaluate(const Context& c, std::mt19937_64& rng) {
  const auto& spec = c.spec;
  const auto& g = spec.grid;
  ProbeSample out;
  std::string d1, d2;
  switch (spec.name) {
    case ProbeName::strichartz:
    case ProbeName::nonlinear:
    case ProbeName::nonlinear_hs: {
      const Field phi = sample_field(g, spec.family, rng, &d1);
      Field psi(g);
      if (spec.zero_velocity) {
        out.description = "phi: " + d1 + "; psi: 0";
      } else {
        psi = sample_field(g, spec.family, rng, &d2);
        const double scale = uniform01(rng);
        psi *= scale;
        out.description = "phi: " + d1 + "; psi: " + fmt(scale) + "*(" + d2 + ")";
      }
      const auto traj = linear_trajectory(phi, psi, spec.T, spec.snapshots);
      if (spec.name == ProbeName::strichartz) {
        out.lhs = w_norm(traj, c.pairs, 0.0);
        out.rhs = sobolev_seminorm(phi, 1.0) + lp_norm(psi, 2.0);
      } else {
        const double s = spec.name == ProbeName::nonlinear_hs ? c.s : 0.0;
        out.lhs = nonlinear_l1l2(traj, c.b, g.spacing(), c.alpha, s);
        out.rhs = c.time_factor * std::pow(w_norm(traj, c.pairs, s), c.alpha + 1.0);
      }
      break;
    }
    case ProbeName::besov_embedding: {
      const Field f = sample_field(g, spec.family, rng, &d1);
      out.description = d1;
      out.lhs = besov_norm(f, BesovSpec::on_grid(g, 0.0, ExtRational(6), ExtRational(2)));
      out.rhs = besov_norm(f, BesovSpec::on_grid(g, 1.0, ExtRational(2), ExtRational(2)));
      break;
    }
    case ProbeName::product_rule: {
      const Field f = sample_field(g, spec.family, rng, &d1);
      const Field h = sample_field(g, spec.family, rng, &d2);
      out.description = "f: " + d1 + "; g: " + d2;
      Field fg(g);
      for (std::size_t i = 0; i < fg.values.size(); ++i) fg.values[i] = f.values[i] * h.values[i];
      const double s = spec.s_rule;
      out.lhs = lp_norm(fractional_derivative(fg, s), 2.0);
      out.rhs = lp_norm(f, 4.0) * lp_norm(fractional_derivative(h, s), 4.0) +
                lp_norm(fractional_derivative(f, s), 4.0) * lp_norm(h, 4.0);
      break;
    }
    case ProbeName::chain_rule: {
      const Field u = sample_field(g, spec.family, rng, &d1);
      out.description = d1;
      Field G(g), dG(g);
      for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double a = std::pow(std::abs(u.values[i]), c.alpha);
        G.values[i] = a * u.values[i];
        dG.values[i] = (c.alpha + 1.0) * a;
      }
      const double s = spec.s_rule;
      out.lhs = lp_norm(fractional_derivative(G, s), 2.0);
      out.rhs = lp_norm(dG, 4.0) * lp_norm(fractional_derivative(u, s), 4.0);
      break;
    }
    case ProbeName::gagliardo_nirenberg: {
      const Field phi = sample_field(g, spec.family, rng, &d1);
      out.description = d1;
      const double p = spec.gn_p;
      const double sigma = 1.5 - 2.0 / (p - 1.0);
      const double grad = sobolev_seminorm(phi, 1.0);
      out.lhs = std::pow(lp_norm(phi, p + 1.0), p + 1.0);
      out.rhs = grad * grad * std::pow(sobolev_seminorm(phi, sigma), p - 1.0);
      break;
    }
  }
  out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
  return out;
}

}  // namespace

RatioProbeReport probe_inequality(const ProbeSpec& spec) {
  validate_probe(spec);
  const Context ctx = make_context(spec);
  RatioProbeReport rep;
  rep.name = spec.name;
  rep.family = std::string(to_string(spec.family));
  rep.seed = spec.seed;
  rep.samples.reserve(static_cast<std::size_t>(spec.samples));
  for (int i = 0; i < spec.samples; ++i) {
    auto rng = sample_rng(spec.seed, static_cast<std::uint64_t>(i));
    ProbeSample smp = evaluate(ctx, rng);
    const bool bad = !std::isfinite(smp.lhs) || !std::isfinite(smp.rhs) ||
                     (smp.rhs == 0.0 && smp.lhs > 0.0);
    if (bad) {
      ++rep.violations;
      smp.ratio = 0.0;
    }
    rep.max_ratio = std::max(rep.max_ratio, smp.ratio);
    rep.samples.push_back(std::move(smp));
  }
  return rep;
}

BoundedRatioResult bounded_ratio_test(ProbeSpec spec) {
  const int small = spec.samples;
  spec.samples = 4 * small;
  BoundedRatioResult res;
  res.report = probe_inequality(spec);
  res.max_small = res.report.max_ratio_prefix(static_cast<std::size_t>(small));
  res.max_large = res.report.max_ratio;
  res.slope = res.max_small > 0.0 ? std::log(res.max_large / res.max_small) / std::log(4.0) : 0.0;
  res.pass = res.report.violations == 0 && res.max_small > 0.0 && res.slope <= 0.05;
  return res;
}

double dilation_profile(double r) {
  static constexpr double a[3] = {1.0, -0.6, 0.3};
  static constexpr double k[3] = {0.8, 1.7, 2.6};
  constexpr double R = 3.0;
  double sum = 0.0;
  for (int m = 0; m < 3; ++m) sum += a[m] * j0(k[m] * r);
  return sum * std::exp(-r * r / (R * R));
}

DilationResult besov_dilation(const GridSpec& g, const std::function<double(double)>& f,
                              const std::vector<double>& lambdas) {
  DilationResult res;
  res.lambdas = lambdas;
  double base = 0.0;
  const auto lo = BesovSpec::on_grid(g, 0.0, ExtRational(6), ExtRational(2));
  const auto hi = BesovSpec::on_grid(g, 1.0, ExtRational(2), ExtRational(2));
  for (double lam : lambdas) {
    const Field fl = Field::from_radial(g, [&](double r) { return f(lam * r); });
    const double ratio = besov_norm(fl, lo) / besov_norm(fl, hi);
    res.ratios.push_back(ratio);
    if (lam == 1.0) base = ratio;
  }
  if (base <= 0.0) throw DomainError("dilation sweep must include lambda = 1");
  for (double r : res.ratios) res.drift = std::max(res.drift, std::abs(r / base - 1.0));
  return res;
}

}  // namespace wavelab
