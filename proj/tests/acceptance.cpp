// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "wavelab/config.hpp"
#include "wavelab/dynamics.hpp"
#include "wavelab/exponents.hpp"
#include "wavelab/harness.hpp"
#include "wavelab/picard.hpp"
#include "wavelab/probes.hpp"
#include "wavelab/propagator.hpp"

using namespace wavelab;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double max_diff(const Field& a, const Field& b) {
  double e = 0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a.values[i] - b.values[i]));
  return e;
}

const GridSpec kRadial{GridMode::radial1d, 512, 32.0};

Field bump(double amp) {
  return Field::from_radial(kRadial, [=](double r) { return amp * std::exp(-r * r); });
}

// ---------------------------------------------------------------------------
// 1. exact exponent suite

Verdict exponents_suite() {
  using namespace exponents;
  int points = 0, theta1_bad = 0, theta2_bad = 0, identity_bad = 0, anomaly_missing = 0;
  // 10 values of b times 10 eligible alphas, each with 10 Lebesgue exponents in (2, 3/b)
  for (int i = 1; i <= 10; ++i) {
    const Rational b(i, 8);  // 1/8 .. 5/4
    const Rational amax((4 - 2 * b) / 3);
    for (int j = 1; j <= 10; ++j) {
      const Rational alpha(amax * Rational(j, 11));
      if (!validate_params({alpha, b, 0, 3}, Theorem::local_l2).passed()) {
        ++identity_bad;
        continue;
      }
      ++points;
      if (!(theta1(alpha, b) > 0)) ++theta1_bad;
      bool anomaly_seen = false;
      for (int k = 1; k <= 10; ++k) {
        const Rational gamma(2 + (3 / b - 2) * Rational(k, 11));
        if (!theta2(alpha, gamma, b).positive) ++theta2_bad;
        const auto lp = estimate_pairs(alpha, gamma, b);
        if (!lp.first_identity || !lp.second_identity) ++identity_bad;
        for (const auto& a : lp.anomalies) anomaly_seen |= a.pair_index == 1;
      }
      if (!anomaly_seen) ++anomaly_missing;
    }
  }
  const auto sym = verify_symbolic_identities();
  const bool ok = points == 100 && theta1_bad == 0 && theta2_bad == 0 && identity_bad == 0 &&
                  anomaly_missing == 0 && sym.first_pair && sym.second_pair;
  return {ok, fmt("%d (alpha,b) points x 10 gamma; theta1<=0: %d, theta2<=0: %d, identity failures: %d, "
                  "missing first-pair anomaly: %d; symbolic identities %s/%s",
                  points, theta1_bad, theta2_bad, identity_bad, anomaly_missing,
                  sym.first_pair ? "hold" : "FAIL", sym.second_pair ? "hold" : "FAIL")};
}

// ---------------------------------------------------------------------------
// 2. linear propagator on a 64^3 grid

Verdict propagator_exactness() {
  const GridSpec g{GridMode::full3d, 64, 2 * std::acos(-1.0)};
  const double kx = 3, ky = -2, kz = 5, k = std::sqrt(kx * kx + ky * ky + kz * kz), t = 5.0;
  auto phase = [&](double x, double y, double z) { return kx * x + ky * y + kz * z; };
  const auto phi = Field::from_function(g, [&](double x, double y, double z) { return std::cos(phase(x, y, z)); });
  const auto psi = Field::from_function(g, [&](double x, double y, double z) { return std::sin(phase(x, y, z)); });
  const auto exact = Field::from_function(g, [&](double x, double y, double z) {
    return std::cos(k * t) * std::cos(phase(x, y, z)) + std::sin(k * t) / k * std::sin(phase(x, y, z));
  });
  const double plane = max_diff(apply_kdot(phi, t) + apply_k(psi, t), exact);

  const auto a = linear_solve(phi, psi, 2.0);
  const auto ab = linear_solve(a.u, a.ut, 3.0);
  const auto direct = linear_solve(phi, psi, 5.0);
  const double group = std::max(max_diff(ab.u, direct.u), max_diff(ab.ut, direct.ut));
  const auto back = linear_solve(direct.u, -1.0 * Field(direct.ut), 5.0);
  const double reversal = std::max(max_diff(back.u, phi), max_diff(-1.0 * Field(back.ut), psi));
  const bool ok = plane <= 1e-11 && group <= 1e-11 && reversal <= 1e-11;
  return {ok, fmt("plane wave error %.2e, group %.2e, reversal %.2e (tol 1e-11)", plane, group, reversal)};
}

// ---------------------------------------------------------------------------
// 3. energy conservation of the reference integrator

double energy_drift(double dt) {
  const auto w = make_weight(kRadial, 0.5, kRadial.spacing());
  ReferenceIntegrator ri({bump(1.0), Field(kRadial)}, w, 1.0, dt);
  const double e0 = ri.current_energy().total;
  double d = 0;
  const long steps = std::lround(1.0 / dt);
  for (long k = 0; k < steps; ++k) {
    ri.step();
    d = std::max(d, std::abs(ri.current_energy().total - e0) / std::abs(e0));
  }
  return d;
}

Verdict energy_conservation() {
  const double d1 = energy_drift(1e-3), d2 = energy_drift(5e-4);
  const double order = std::log2(d1 / d2);
  return {d1 <= 1e-4 && order >= 1.9,
          fmt("alpha=1 b=1/2 eps=h, radial n=512: max drift %.3e at dt=1e-3 (tol 1e-4), %.3e at dt=5e-4, "
              "order %.2f (need >= 1.9)", d1, d2, order)};
}

// ---------------------------------------------------------------------------
// 4/5 and 8: contraction and oracle agreement

struct ContractionSetup {
  EquationParams eq;
  PicardConfig cfg;
  double amplitude = 1.0;
  double theta_min = 0.0;
};

ContractionSetup l2_setup() {
  ContractionSetup s;
  s.eq.params.alpha = 1;
  s.eq.params.b = Rational(1, 4);
  s.cfg.snapshots = 65;
  s.cfg.velocities = false;
  s.amplitude = 2.25;
  const auto g = exponents::default_gamma(s.eq.params.b);
  s.theta_min = std::min(to_double(exponents::theta1(s.eq.params.alpha, s.eq.params.b)),
                         to_double(exponents::theta2(s.eq.params.alpha, g, s.eq.params.b).value));
  return s;
}

ContractionSetup hs_setup() {
  ContractionSetup s;
  s.eq.params.alpha = Rational(1, 2);
  s.eq.params.b = 1;
  s.eq.params.s = Rational(1, 4);
  s.cfg.snapshots = 65;
  s.cfg.velocities = false;
  s.cfg.norm = WorkingNorm::hs;
  s.amplitude = 1.35;
  const auto g = exponents::default_gamma(s.eq.params.b);
  s.theta_min = std::min(to_double(exponents::theta1(s.eq.params.alpha, s.eq.params.b)),
                         to_double(exponents::theta2(s.eq.params.alpha, g, s.eq.params.b).value));
  return s;
}

struct ContractionResult {
  Verdict verdict;
  double T_star = 0.0;
};

ContractionResult contraction(const ContractionSetup& s) {
  const auto phi = bump(s.amplitude);
  const Field psi(kRadial);
  const auto th = bisect_threshold(phi, psi, s.cfg, s.eq, 0.5, 4.0, 10);
  std::vector<double> Ts, ratios;
  bool below_ok = true;
  std::string per_T;
  for (double f : {1.0, 0.5, 0.25}) {
    auto cfg = s.cfg;
    cfg.T = th.T_star * f;
    const auto sol = solve_local(phi, psi, cfg, s.eq);
    below_ok = below_ok && sol.report.contracted();
    Ts.push_back(cfg.T);
    ratios.push_back(sol.report.max_ratio);
    per_T += fmt(" T=%.3f:%s/%.3g", cfg.T, std::string(to_string(sol.report.outcome)).c_str(), sol.report.max_ratio);
  }
  const double slope = fit_log_slope(Ts, ratios);
  const double lo = 0.75 * s.theta_min, hi = 1.25 * s.theta_min;
  const bool ok = th.bracketed && below_ok && slope >= lo && slope <= hi;
  return {{ok, fmt("amp %.2f, T*=%.4f;%s; log-slope %.3f vs min(theta1,theta2)=%.4f, window [%.3f, %.3f]",
                   s.amplitude, th.T_star, per_T.c_str(), slope, s.theta_min, lo, hi)},
          th.T_star};
}

Verdict oracle(const ContractionSetup& s, double T) {
  const auto phi = bump(s.amplitude);
  const Field psi(kRadial);
  const auto w = make_weight(kRadial, s.eq.b(), s.eq.epsilon_on(kRadial));
  constexpr int sub = 16;
  std::vector<double> gaps;
  std::string detail;
  for (int S : {33, 65, 129}) {
    auto cfg = s.cfg;
    cfg.T = T;
    cfg.snapshots = S;
    cfg.tol = 1e-12;
    cfg.max_iters = 200;
    const auto sol = solve_local(phi, psi, cfg, s.eq);
    if (sol.report.outcome != PicardOutcome::converged) {
      return {false, fmt("Picard did not converge at %d snapshots", S)};
    }
    const double dt = T / (S - 1) / sub;
    ReferenceIntegrator ri({phi, psi}, w, s.eq.alpha(), dt);
    double gap = 0;
    for (int i = 0; i < S; ++i) {
      ri.advance_to(i * sub * dt);
      gap = std::max(gap, lp_norm(sol.trajectory.u[i] - ri.state().u, 2));
    }
    gaps.push_back(gap);
    detail += fmt(" S=%d:%.2e", S, gap);
  }
  const double o1 = std::log2(gaps[0] / gaps[1]), o2 = std::log2(gaps[1] / gaps[2]);
  const bool ok = gaps[1] <= 1e-4 && std::min(o1, o2) >= 2.0;
  return {ok, fmt("T=%.4f, L^inf_t L^2_x gap%s (tol 1e-4 at S=65); orders %.2f, %.2f (need >= 2)",
                  T, detail.c_str(), o1, o2)};
}

// ---------------------------------------------------------------------------
// 6. small-data continuation

Verdict small_data() {
  EquationParams eq;
  eq.params.alpha = 1;
  eq.params.b = Rational(1, 4);
  PicardConfig cfg;
  cfg.T = 1.0;
  cfg.snapshots = 33;
  ContinuationOptions opts;
  opts.T_cap = 2.0;
  opts.max_intervals = 60;
  const auto phi = bump(1.0);
  const Field psi(kRadial);
  const double horizon = 10.0;
  const auto bis = bisect_delta(phi, psi, horizon, cfg, eq, 1.0, 100.0, 8, opts);
  if (!bis.found) return {false, "no delta within bound"};
  const auto at = run_small_data(phi, psi, bis.delta_star, horizon, cfg, eq, opts);
  const auto half = run_small_data(phi, psi, 0.5 * bis.delta_star, horizon, cfg, eq, opts);
  const auto big = run_small_data(phi, psi, 10 * bis.delta_star, horizon, cfg, eq, opts);
  const bool below = at.within_bound && half.within_bound;
  const bool breaks = !big.within_bound || big.intervals_shrink;
  return {bis.delta_star > 0 && below && breaks,
          fmt("delta*=%.4g: growth %.3f (delta*/2: %.3f), energy drift %.1e; 10 delta*: reached=%d growth=%.3g "
              "within_bound=%d intervals_shrink=%d (%s)",
              bis.delta_star, at.growth, half.growth, at.max_energy_drift, big.reached_horizon, big.growth,
              big.within_bound, big.intervals_shrink, big.continuation.stop_reason.c_str())};
}

// ---------------------------------------------------------------------------
// 7. inequality probes

Verdict probes() {
  bool ok = true;
  std::string detail;
  for (auto name : all_probes()) {
    ProbeSpec sp;
    sp.name = name;
    sp.samples = 100;
    sp.seed = 20240917;
    sp.family = SampleFamily::gaussian;
    sp.grid = {GridMode::radial1d, 1024, 64.0};
    sp.params.alpha = 1;
    sp.params.b = Rational(1, 4);
    if (name == ProbeName::nonlinear_hs) {
      sp.params.alpha = Rational(1, 2);
      sp.params.b = 1;
      sp.params.s = Rational(1, 4);
    }
    const auto r = bounded_ratio_test(sp);
    ok = ok && r.pass;
    detail += fmt(" %s=%.3f%s", std::string(to_string(name)).c_str(), r.slope, r.pass ? "" : "(FAIL)");
  }
  const auto d = besov_dilation({GridMode::radial1d, 1024, 64.0}, dilation_profile, {0.5, 1.0, 2.0});
  ok = ok && d.drift <= 0.15;
  return {ok, fmt("slopes 100->400 (tol 0.05):%s; dilation drift %.4f (tol 0.15)", detail.c_str(), d.drift)};
}

// ---------------------------------------------------------------------------
// 9. reproducibility through the harness

std::map<std::string, std::string> csvs(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.path().extension() != ".csv") continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    out[fs::relative(e.path(), dir).string()] = ss.str();
  }
  return out;
}

Verdict reproducibility() {
  const auto base = fs::temp_directory_path() / ("wavelab_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(base);
  const std::string text =
      "eq.b = 1/4\ngrid.n = 256\ntime.snapshots = 33\ndata.amplitude = 1.5\n"
      "probes.samples = 20\nprobes.seed = 20240917\ncontinue.max_intervals = 20\ntime.horizon = 3\n";
  int files = 0;
  std::string mismatched;
  for (const char* sub : {"picard", "sweep", "continue", "norms", "probe", "simulate"}) {
    auto cfg = parse_config(text);
    std::ostringstream out, err;
    cfg.out_dir = (base / (std::string(sub) + "_1")).string();
    const auto a = run(sub, cfg, out, err);
    cfg.out_dir = (base / (std::string(sub) + "_2")).string();
    const auto b = run(sub, cfg, out, err);
    if (a.exit_code == exit_config || a.dir.empty()) return {false, std::string(sub) + ": " + err.str()};
    const auto fa = csvs(a.dir), fb = csvs(b.dir);
    files += static_cast<int>(fa.size());
    if (fa.empty() || fa != fb) mismatched += std::string(" ") + sub;
  }
  fs::remove_all(base);
  return {mismatched.empty(), fmt("%d CSV files over 6 subcommands compared byte-for-byte; mismatches:%s",
                                  files, mismatched.empty() ? " none" : mismatched.c_str())};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Verdict()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    const Verdict v = fn();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d %-22s %s  %s  [%.1fs]\n", id, name, v.pass ? "PASS" : "FAIL", v.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !v.pass;
  };

  report(1, "exponent-suite", exponents_suite);
  report(2, "propagator-exactness", propagator_exactness);
  report(3, "energy-conservation", energy_conservation);

  const auto l2 = l2_setup();
  double T_l2 = 0.0;
  report(4, "contraction", [&] {
    auto r = contraction(l2);
    T_l2 = r.T_star;
    return r.verdict;
  });
  report(5, "oracle-equivalence", [&] { return oracle(l2, T_l2); });
  report(6, "small-data-global", small_data);
  report(7, "inequality-probes", probes);
  const auto hs = hs_setup();
  report(8, "hs-mode", [&] {
    auto c = contraction(hs);
    auto o = oracle(hs, c.T_star);
    return Verdict{c.verdict.pass && o.pass, "contraction: " + c.verdict.detail + " | oracle: " + o.detail};
  });
  report(9, "reproducibility", reproducibility);

  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
