#include "wavelab/harness.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wavelab/dynamics.hpp"
#include "wavelab/error.hpp"
#include "wavelab/norms.hpp"
#include "wavelab/output.hpp"
#include "wavelab/picard.hpp"
#include "wavelab/probes.hpp"

#ifndef WAVELAB_VERSION
#define WAVELAB_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace wavelab {

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s = {"check-exponents", "simulate", "picard", "continue",
                                             "norms",           "probe",    "sweep"};
  return s;
}

double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ShapeError("log slope needs >= 2 points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

std::vector<exponents::AdmissiblePair> resolved_pairs(const RunConfig& cfg) {
  if (!cfg.pair_set.empty()) return cfg.pairs();
  const auto& p = cfg.params;
  if (p.b > 0 && p.b < Rational(p.n, 2)) {
    return exponents::default_pair_set(p.alpha, p.b, cfg.equation().lebesgue_gamma(), p.n);
  }
  return exponents::parse_pair_set("inf:2,4:4", p.n);
}

namespace {

std::string utc_now(const char* fmt) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::strftime(buf, sizeof buf, fmt, &tm);
  return buf;
}

json number(double v) { return std::isfinite(v) ? json(v) : json(format_number(v)); }

json pair_record(const exponents::AdmissiblePair& p) {
  const auto c = exponents::classify_pair(p);
  return {{"pair", p.to_string()},
          {"q", p.q.to_string()},
          {"r", p.r.to_string()},
          {"spatial_exponent", p.spatial_exponent().to_string()},
          {"status", std::string(to_string(c.status))},
          {"failed", c.failed}};
}

std::string rational_text(const Rational& r) {
  return to_string(r) + " (" + format_number(to_double(r)) + ")";
}

// Exponent bookkeeping shared by check-exponents and every manifest.
json exponent_record(const exponents::Params& p, const std::optional<Rational>& gamma_in,
                     exponents::Theorem theorem, std::ostringstream* text) {
  using namespace exponents;
  json rec;
  auto say = [&](const std::string& line) {
    if (text) *text << line << '\n';
  };
  rec["alpha"] = to_string(p.alpha);
  rec["b"] = to_string(p.b);
  rec["s"] = to_string(p.s);
  rec["n"] = p.n;
  rec["theorem"] = std::string(theorem_tag(theorem));
  say("parameters: alpha = " + to_string(p.alpha) + ", b = " + to_string(p.b) +
      ", s = " + to_string(p.s) + ", n = " + std::to_string(p.n));
  say("theorem: " + std::string(theorem_tag(theorem)));

  const auto elig = validate_params(p, theorem);
  json checks = json::array();
  for (const auto& c : elig.checks) {
    checks.push_back({{"hypothesis", c.hypothesis}, {"passed", c.passed}});
    say(std::string(c.passed ? "  [pass] " : "  [FAIL] ") + c.hypothesis);
  }
  for (const auto& a : elig.auxiliary) say("  [info] " + a);
  rec["eligible"] = elig.passed();
  rec["checks"] = checks;
  rec["auxiliary"] = elig.auxiliary;
  say(std::string("eligible: ") + (elig.passed() ? "yes" : "no"));

  if (!(p.b > 0)) return rec;
  const Rational gamma = gamma_in ? *gamma_in : default_gamma(p.b, p.n);
  rec["gamma"] = to_string(gamma);
  rec["gamma_default"] = !gamma_in.has_value();
  say("gamma = " + rational_text(gamma) + (gamma_in ? "" : " (midpoint of (2, n/b))"));

  try {
    const auto t1 = theta1(p.alpha, p.b);
    rec["theta1"] = to_string(t1);
    say("theta1 = (4 - alpha)/2 = " + rational_text(t1) + (t1 > 0 ? "  > 0" : "  <= 0"));
  } catch (const Error& e) {
    rec["theta1"] = nullptr;
    say(std::string("theta1: not defined (") + e.what() + ")");
  }
  try {
    const auto t2 = theta2(p.alpha, gamma, p.b, p.n);
    rec["theta2"] = to_string(t2.value);
    rec["theta2_positive"] = t2.positive;
    say("theta2 = (alpha*gamma + 4*gamma - 6)/(2*gamma*(alpha+1)) = " + rational_text(t2.value) +
        (t2.positive ? "  > 0" : "  <= 0"));
  } catch (const Error& e) {
    rec["theta2"] = nullptr;
    say(std::string("theta2: not defined (") + e.what() + ")");
  }

  try {
    const auto lp = estimate_pairs(p.alpha, gamma, p.b);
    json pairs = json::array();
    int idx = 1;
    for (const auto* pr : {&lp.first, &lp.second}) {
      auto r = pair_record(*pr);
      r["identity"] = idx == 1 ? lp.first_identity : lp.second_identity;
      pairs.push_back(r);
      say("nonlinear-estimate pair " + std::to_string(idx) + ": " + pr->to_string() + " -> " +
          r["status"].get<std::string>() +
          (r["identity"].get<bool>() ? ", 2/q = gamma(r) holds" : ", 2/q = gamma(r) fails"));
      ++idx;
    }
    json anomalies = json::array();
    for (const auto& a : lp.anomalies) {
      anomalies.push_back({{"pair_index", a.pair_index}, {"q", a.q.to_string()}, {"note", a.note}});
      say("  WARNING sign anomaly, pair " + std::to_string(a.pair_index) + ": q = " +
          a.q.to_string() + "; " + a.note);
    }
    rec["estimate_pairs"] = pairs;
    rec["anomalies"] = anomalies;
  } catch (const Error& e) {
    say(std::string("nonlinear-estimate pairs: not defined (") + e.what() + ")");
  }

  if (p.b < Rational(p.n, 2)) {
    try {
      json set = json::array();
      say("working pair set:");
      for (const auto& pr : default_pair_set(p.alpha, p.b, gamma, p.n)) {
        set.push_back(pair_record(pr));
        say("  " + pr.to_string() + " -> L^" + pr.q.to_string() + "_t L^" +
            pr.spatial_exponent().to_string() + "_x, " +
            std::string(to_string(classify_pair(pr).status)));
      }
      rec["default_pair_set"] = set;
    } catch (const Error& e) {
      say(std::string("working pair set: not defined (") + e.what() + ")");
    }
  }

  if (theorem == Theorem::local_hs) {
    try {
      const auto h = hoelder_split(p, gamma_in);
      rec["hoelder"] = {{"r1", to_string(h.r1)},
                        {"p1", to_string(h.p1)},
                        {"r2", to_string(h.r2)},
                        {"p2", to_string(h.p2)},
                        {"p2_lower_bound", to_string(h.p2_lower_bound)},
                        {"hs_pair", pair_record(h.hs_pair)},
                        {"gamma_weight_finite", h.gamma_weight_finite},
                        {"r1_weight_finite", h.r1_weight_finite},
                        {"r2_weight_finite", h.r2_weight_finite}};
      say("Hoelder split: r1 = " + to_string(h.r1) + ", p1 = " + to_string(h.p1) +
          ", r2 = " + to_string(h.r2) + ", p2 = " + to_string(h.p2) + " (lower bound " +
          to_string(h.p2_lower_bound) + ")");
      say("H^s pair: " + h.hs_pair.to_string() + " -> " +
          std::string(to_string(h.hs_pair_class.status)));
    } catch (const Error& e) {
      say(std::string("Hoelder split: not defined (") + e.what() + ")");
    }
  }

  const auto sym = verify_symbolic_identities(p.n);
  rec["symbolic_identities"] = {{"first_pair", sym.first_pair},
                                {"second_pair", sym.second_pair},
                                {"hs_pair", sym.hs_pair}};
  say(std::string("symbolic identities: first pair ") + (sym.first_pair ? "holds" : "FAILS") +
      ", second pair " + (sym.second_pair ? "holds" : "FAILS") + ", H^s pair " +
      (sym.hs_pair ? "holds" : "FAILS"));
  return rec;
}

struct Context {
  fs::path dir;
  const RunConfig* cfg = nullptr;
  std::string subcommand;
  std::vector<std::string> files;
  json outcome = json::object();
  std::string started;

  fs::path file(const std::string& name) {
    files.push_back(name);
    return dir / name;
  }
};

fs::path make_run_dir(const fs::path& base, const std::string& sub) {
  fs::create_directories(base);
  const std::string stamp = utc_now("%Y%m%dT%H%M%SZ");
  for (int k = 0;; ++k) {
    std::ostringstream name;
    name << sub << '-' << stamp << '-' << std::setw(3) << std::setfill('0') << k;
    const fs::path p = base / name.str();
    if (fs::create_directory(p)) return p;
  }
}

std::string finish(Context& ctx, int code, bool partial, const std::string& error) {
  json m;
  m["format"] = "wavelab-manifest/1";
  m["version"] = WAVELAB_VERSION;
  m["subcommand"] = ctx.subcommand;
  m["started"] = ctx.started;
  m["finished"] = utc_now("%Y-%m-%dT%H:%M:%SZ");
  json cfgj = json::object();
  for (const auto& [k, v] : ctx.cfg->echo()) cfgj[k] = v;
  m["config"] = cfgj;
  json explicit_keys = json::object();
  for (const auto& [k, v] : ctx.cfg->explicit_keys) explicit_keys[k] = v;
  m["explicit_keys"] = explicit_keys;
  json derived = exponent_record(ctx.cfg->params, ctx.cfg->gamma, ctx.cfg->theorem, nullptr);
  try {
    json pairs = json::array();
    for (const auto& p : resolved_pairs(*ctx.cfg)) pairs.push_back(pair_record(p));
    derived["run_pairs"] = pairs;
  } catch (const Error&) {
  }
  if (ctx.subcommand != "check-exponents") {
    try {
      derived["epsilon"] = ctx.cfg->equation().epsilon_on(ctx.cfg->grid);
      derived["grid_spacing"] = ctx.cfg->grid.spacing();
      derived["stability_limit"] = stability_limit(ctx.cfg->grid);
    } catch (const Error&) {
    }
  }
  m["derived"] = derived;
  m["outcome"] = ctx.outcome;
  m["exit_code"] = code;
  m["partial"] = partial;
  if (!error.empty()) m["error"] = error;
  m["files"] = ctx.files;
  const std::string text = m.dump(2) + "\n";
  std::ofstream os(ctx.dir / "manifest.json", std::ios::binary);
  os << text;
  return text;
}

void write_energy(Context& ctx, const std::vector<EnergyRecord>& series, const std::string& stem) {
  std::ofstream os(ctx.file(stem + ".csv"), std::ios::binary);
  write_energy_csv(os, series);
  if (ctx.cfg->svg && !series.empty()) {
    PlotSeries s{"total energy", {}, {}};
    for (const auto& e : series) {
      s.x.push_back(e.t);
      s.y.push_back(e.total);
    }
    write_svg(ctx.file(stem + ".svg"), {"weighted energy", "t", "E(t)", false}, {s});
  }
}

double max_relative_drift(const std::vector<EnergyRecord>& series) {
  double drift = 0.0;
  if (series.empty()) return drift;
  const double e0 = series.front().total;
  for (const auto& e : series) {
    drift = std::max(drift, std::abs(e.total - e0) / std::max(std::abs(e0), 1e-300));
  }
  return drift;
}

// ---- subcommands ----

int run_check(Context& ctx, std::ostream& out) {
  const auto& cfg = *ctx.cfg;
  std::ostringstream text;
  const json rec = exponent_record(cfg.params, cfg.gamma, cfg.theorem, &text);
  out << text.str();
  {
    std::ofstream os(ctx.file("report.txt"), std::ios::binary);
    os << text.str();
  }
  CsvTable pairs({"source", "pair", "q", "r", "spatial_exponent", "status", "failed"});
  auto add = [&](const std::string& source, const json& arr) {
    for (const auto& p : arr) {
      std::string failed;
      for (const auto& f : p["failed"]) failed += (failed.empty() ? "" : "; ") + f.get<std::string>();
      pairs.add_row({source, p["pair"], p["q"], p["r"], p["spatial_exponent"], p["status"], failed});
    }
  };
  if (rec.contains("estimate_pairs")) add("nonlinear_estimate", rec["estimate_pairs"]);
  if (rec.contains("default_pair_set")) add("working_set", rec["default_pair_set"]);
  pairs.write(ctx.file("pairs.csv"));
  ctx.outcome = {{"eligible", rec["eligible"]},
                 {"anomalies", rec.contains("anomalies") ? rec["anomalies"].size() : 0}};
  return rec["eligible"].get<bool>() ? exit_ok : exit_failure;
}

int run_simulate(Context& ctx, std::ostream& out) {
  const auto& cfg = *ctx.cfg;
  const auto [phi, psi] = make_data(cfg);
  const auto eq = cfg.equation();
  const auto w = make_weight(cfg.grid, eq.b(), eq.epsilon_on(cfg.grid));
  ReferenceIntegrator ri({phi, psi}, w, eq.alpha(), cfg.dt);
  const long steps = std::lround(cfg.T / cfg.dt);
  std::vector<EnergyRecord> series{ri.current_energy()};
  for (long k = 0; k < steps; ++k) {
    ri.step();
    if (!ri.state().u.all_finite()) throw PropagationError("non-finite field at step " + std::to_string(k + 1));
    series.push_back(ri.current_energy());
  }
  write_energy(ctx, series, "energy");
  write_snapshot(ctx.file("u_final.bin").string(), ri.state().u, ri.time());
  write_snapshot(ctx.file("ut_final.bin").string(), ri.state().ut, ri.time());
  const double drift = max_relative_drift(series);
  ctx.outcome = {{"steps", steps},
                 {"final_time", ri.time()},
                 {"initial_energy", series.front().total},
                 {"final_energy", series.back().total},
                 {"max_relative_energy_drift", number(drift)}};
  out << "simulate: " << steps << " steps, max relative energy drift " << format_number(drift)
      << '\n';
  return exit_ok;
}

int run_picard_in(Context& ctx, const RunConfig& cfg, std::ostream& out) {
  const auto [phi, psi] = make_data(cfg);
  const auto sol = solve_local(phi, psi, cfg.picard(), cfg.equation());
  const auto& rep = sol.report;

  CsvTable it({"k", "d", "ratio", "ball_norm"});
  for (int k = 1; k <= rep.iterations; ++k) {
    it.add_row({std::to_string(k), format_number(rep.d[k - 1]),
                k >= 2 ? format_number(rep.ratio[k - 2]) : std::string(),
                format_number(rep.ball_norms[k - 1])});
  }
  it.write(ctx.file("picard.csv"));

  const double s = cfg.norm == WorkingNorm::hs ? to_double(cfg.params.s) : 0.0;
  CsvTable pn({"pair", "norm", "value"});
  const auto l2 = pair_norms(sol.trajectory, rep.pairs);
  for (std::size_t i = 0; i < rep.pairs.size(); ++i) {
    pn.add_row({rep.pairs[i].to_string(), "W(L2)", format_number(l2[i])});
  }
  if (s > 0) {
    const auto hs = pair_norms(sol.trajectory, rep.pairs, s);
    for (std::size_t i = 0; i < rep.pairs.size(); ++i) {
      pn.add_row({rep.pairs[i].to_string(), "W(Hs)", format_number(hs[i])});
    }
  }
  pn.write(ctx.file("pair_norms.csv"));

  if (sol.trajectory.has_velocity()) {
    const auto w = make_weight(cfg.grid, cfg.equation().b(), cfg.equation().epsilon_on(cfg.grid));
    std::vector<EnergyRecord> series;
    for (std::size_t i = 0; i < sol.trajectory.size(); ++i) {
      series.push_back(energy(sol.trajectory.u[i], sol.trajectory.ut[i], w,
                              cfg.equation().alpha(), sol.trajectory.times[i]));
    }
    write_energy(ctx, series, "energy");
    ctx.outcome["max_relative_energy_drift"] = number(max_relative_drift(series));
  }
  write_snapshot(ctx.file("u_final.bin").string(), sol.trajectory.u.back(),
                 sol.trajectory.times.back());
  if (cfg.svg && !rep.d.empty()) {
    PlotSeries d{"d_k", {}, {}};
    for (int k = 1; k <= rep.iterations; ++k) {
      d.x.push_back(k);
      d.y.push_back(rep.d[k - 1]);
    }
    write_svg(ctx.file("contraction.svg"), {"Picard increments", "k", "d_k", true}, {d});
  }

  ctx.outcome["outcome"] = std::string(to_string(rep.outcome));
  ctx.outcome["iterations"] = rep.iterations;
  ctx.outcome["T"] = rep.T;
  ctx.outcome["a"] = number(rep.a);
  ctx.outcome["max_ratio"] = number(rep.max_ratio);
  ctx.outcome["final_d"] = rep.d.empty() ? json(nullptr) : number(rep.d.back());
  ctx.outcome["contracted"] = rep.contracted();
  out << "picard: T = " << format_number(rep.T) << ", " << to_string(rep.outcome) << " after "
      << rep.iterations << " iterations, max ratio " << format_number(rep.max_ratio) << '\n';
  return rep.outcome == PicardOutcome::converged ? exit_ok : exit_failure;
}

int run_picard(Context& ctx, std::ostream& out) { return run_picard_in(ctx, *ctx.cfg, out); }

void write_intervals(Context& ctx, const ContinuationResult& c, const std::string& name) {
  CsvTable t({"t0", "T", "iterations", "max_ratio", "outcome", "accepted", "energy_drift"});
  for (const auto& r : c.intervals) {
    t.add_row({format_number(r.t0), format_number(r.T), std::to_string(r.iterations),
               format_number(r.max_ratio), std::string(to_string(r.outcome)),
               r.accepted ? "1" : "0", format_number(r.energy_drift)});
  }
  t.write(ctx.file(name));
}

json small_data_record(const SmallDataRun& r) {
  return {{"delta", r.delta},
          {"reached_horizon", r.reached_horizon},
          {"growth", number(r.growth)},
          {"within_bound", r.within_bound},
          {"intervals_shrink", r.intervals_shrink},
          {"max_energy_drift", number(r.max_energy_drift)},
          {"intervals", r.continuation.intervals.size()},
          {"stop_reason", r.continuation.stop_reason}};
}

int run_continue(Context& ctx, std::ostream& out) {
  const auto& cfg = *ctx.cfg;
  const auto [phi, psi] = make_data(cfg);
  const auto pc = cfg.picard();
  const auto eq = cfg.equation();
  const auto opts = cfg.continuation();

  if (!cfg.cont_bisect) {
    const auto run = run_small_data(phi, psi, 1.0, cfg.horizon, pc, eq, opts);
    write_intervals(ctx, run.continuation, "intervals.csv");
    write_energy(ctx, run.continuation.energy, "energy");
    ctx.outcome = small_data_record(run);
    out << "continue: " << (run.reached_horizon ? "reached" : "did not reach") << " t = "
        << format_number(cfg.horizon) << ", energy-norm growth " << format_number(run.growth)
        << '\n';
    return run.reached_horizon ? exit_ok : exit_failure;
  }

  const auto bis = bisect_delta(phi, psi, cfg.horizon, pc, eq, cfg.delta_lo, cfg.delta_hi,
                                cfg.delta_steps, opts);
  CsvTable t({"delta", "reached_horizon", "growth", "within_bound", "intervals_shrink",
              "max_energy_drift", "intervals"});
  auto row = [&](const SmallDataRun& r) {
    t.add_row({format_number(r.delta), r.reached_horizon ? "1" : "0", format_number(r.growth),
               r.within_bound ? "1" : "0", r.intervals_shrink ? "1" : "0",
               format_number(r.max_energy_drift), std::to_string(r.continuation.intervals.size())});
  };
  for (const auto& r : bis.runs) row(r);
  ctx.outcome["delta_star"] = bis.delta_star;
  ctx.outcome["found"] = bis.found;
  if (bis.found) {
    const auto at = run_small_data(phi, psi, bis.delta_star, cfg.horizon, pc, eq, opts);
    const auto big = run_small_data(phi, psi, 10.0 * bis.delta_star, cfg.horizon, pc, eq, opts);
    row(big);
    write_intervals(ctx, at.continuation, "intervals.csv");
    write_energy(ctx, at.continuation.energy, "energy");
    ctx.outcome["at_delta_star"] = small_data_record(at);
    ctx.outcome["at_ten_delta_star"] = small_data_record(big);
    ctx.outcome["ten_delta_star_breaks"] = !big.within_bound || big.intervals_shrink;
  }
  t.write(ctx.file("bisection.csv"));
  out << "continue: delta* = " << format_number(bis.delta_star)
      << (bis.found ? "" : " (no delta within bound)") << '\n';
  return bis.found ? exit_ok : exit_failure;
}

int run_norms(Context& ctx, std::ostream& out) {
  const auto& cfg = *ctx.cfg;
  const auto [phi, psi] = make_data(cfg);
  const double s = to_double(cfg.params.s);
  CsvTable t({"quantity", "value"});
  auto put = [&](const std::string& q, double v) {
    t.add_row({q, format_number(v)});
    ctx.outcome[q] = number(v);
  };
  put("phi_L2", lp_norm(phi, 2));
  put("phi_H1", sobolev_seminorm(phi, 1));
  put("psi_L2", lp_norm(psi, 2));
  if (s > 0) {
    put("phi_Hs+1", sobolev_seminorm(phi, s + 1));
    put("psi_Hs", sobolev_seminorm(psi, s));
  }
  put("phi_B0_6_2", besov_norm(phi, BesovSpec::on_grid(cfg.grid, 0, 6, 2)));
  put("phi_B1_2_2", besov_norm(phi, BesovSpec::on_grid(cfg.grid, 1, 2, 2)));
  put("phi_B0_2_2", besov_norm(phi, BesovSpec::on_grid(cfg.grid, 0, 2, 2)));

  const auto traj = linear_trajectory(phi, psi, cfg.T, cfg.snapshots);
  const auto pairs = resolved_pairs(cfg);
  const auto l2 = pair_norms(traj, pairs);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    put("free_L" + pairs[i].q.to_string() + "_L" + pairs[i].spatial_exponent().to_string(), l2[i]);
  }
  put("free_W_L2", w_norm(traj, pairs));
  if (s > 0) put("free_W_Hs", w_norm(traj, pairs, s));
  t.write(ctx.file("norms.csv"));

  CsvTable blocks({"j", "N", "block_L2"});
  const auto range = dyadic_range(cfg.grid);
  for (int j = range.j_min; j <= range.j_max; ++j) {
    const double N = std::ldexp(1.0, j);
    blocks.add_row({std::to_string(j), format_number(N), format_number(lp_norm(lp_project(phi, N), 2))});
  }
  blocks.write(ctx.file("blocks.csv"));
  out << "norms: " << t.rows() << " quantities written\n";
  return exit_ok;
}

int run_probe(Context& ctx, std::ostream& out) {
  const auto& cfg = *ctx.cfg;
  std::vector<ProbeName> names;
  if (cfg.probe == "all") names = all_probes();
  else names.push_back(parse_probe_name(cfg.probe));

  CsvTable summary({"probe", "samples_small", "samples_large", "max_small", "max_large", "slope",
                    "violations", "pass"});
  bool all_pass = true;
  json results = json::array();
  for (auto name : names) {
    ProbeSpec spec;
    spec.name = name;
    spec.family = cfg.family;
    spec.samples = cfg.probe_samples;
    spec.seed = *cfg.seed;
    spec.grid = cfg.grid;
    spec.params = cfg.params;
    spec.gamma = cfg.gamma;
    spec.T = cfg.T;
    spec.snapshots = cfg.snapshots;
    spec.gn_p = cfg.gn_p;
    spec.zero_velocity = cfg.zero_velocity;
    const auto r = bounded_ratio_test(spec);
    const std::string tag(to_string(name));
    CsvTable samples({"index", "description", "lhs", "rhs", "ratio"});
    for (std::size_t i = 0; i < r.report.samples.size(); ++i) {
      const auto& s = r.report.samples[i];
      samples.add_row({std::to_string(i), s.description, format_number(s.lhs),
                       format_number(s.rhs), format_number(s.ratio)});
    }
    samples.write(ctx.file("probe_" + tag + ".csv"));
    summary.add_row({tag, std::to_string(cfg.probe_samples), std::to_string(r.report.count()),
                     format_number(r.max_small), format_number(r.max_large),
                     format_number(r.slope), std::to_string(r.report.violations),
                     r.pass ? "1" : "0"});
    results.push_back({{"probe", tag},
                       {"max_small", number(r.max_small)},
                       {"max_large", number(r.max_large)},
                       {"slope", number(r.slope)},
                       {"violations", r.report.violations},
                       {"pass", r.pass}});
    all_pass = all_pass && r.pass;
    out << "probe " << tag << ": slope " << format_number(r.slope) << (r.pass ? " pass" : " FAIL")
        << '\n';

    if (name == ProbeName::besov_embedding) {
      const auto d = besov_dilation(cfg.grid, dilation_profile, {0.5, 1.0, 2.0});
      CsvTable dt({"lambda", "ratio"});
      for (std::size_t i = 0; i < d.lambdas.size(); ++i) {
        dt.add_row(std::vector<double>{d.lambdas[i], d.ratios[i]});
      }
      dt.write(ctx.file("dilation.csv"));
      const bool ok = d.drift <= 0.15;
      ctx.outcome["dilation_drift"] = number(d.drift);
      ctx.outcome["dilation_pass"] = ok;
      all_pass = all_pass && ok;
      out << "probe besov dilation: drift " << format_number(d.drift) << (ok ? " pass" : " FAIL")
          << '\n';
    }
  }
  summary.write(ctx.file("probes.csv"));
  ctx.outcome["probes"] = results;
  ctx.outcome["all_pass"] = all_pass;
  return all_pass ? exit_ok : exit_failure;
}

int run_sweep(Context& ctx, std::ostream& out, std::ostream& err) {
  const auto& cfg = *ctx.cfg;
  CsvTable agg({"T", "outcome", "iterations", "max_ratio", "contracted", "dir"});
  std::vector<double> Ts, ratios;
  bool all_converged = true;
  for (int k = 0; k < 3; ++k) {
    RunConfig sub = cfg;
    sub.T = cfg.T / std::ldexp(1.0, k);
    Context sc;
    sc.dir = ctx.dir / ("T" + std::to_string(k));
    fs::create_directory(sc.dir);
    sc.cfg = &sub;
    sc.subcommand = "picard";
    sc.started = utc_now("%Y-%m-%dT%H:%M:%SZ");
    int code = exit_failure;
    try {
      code = run_picard_in(sc, sub, out);
      finish(sc, code, false, "");
    } catch (const Error& e) {
      err << "sweep T = " << format_number(sub.T) << ": " << e.what() << '\n';
      finish(sc, code, true, e.what());
    }
    all_converged = all_converged && code == exit_ok;
    const double mr = sc.outcome.value("max_ratio", json(0.0)).is_number()
                          ? sc.outcome.value("max_ratio", json(0.0)).get<double>()
                          : std::nan("");
    agg.add_row({format_number(sub.T), sc.outcome.value("outcome", std::string("error")),
                 std::to_string(sc.outcome.value("iterations", 0)), format_number(mr),
                 sc.outcome.value("contracted", false) ? "1" : "0", sc.dir.filename().string()});
    if (mr > 0 && std::isfinite(mr)) {
      Ts.push_back(sub.T);
      ratios.push_back(mr);
    }
  }
  agg.write(ctx.file("sweep.csv"));
  if (Ts.size() >= 2) {
    const double slope = fit_log_slope(Ts, ratios);
    ctx.outcome["ratio_log_slope"] = number(slope);
    out << "sweep: log-slope of max ratio vs T = " << format_number(slope) << '\n';
  }
  ctx.outcome["all_converged"] = all_converged;
  return all_converged ? exit_ok : exit_failure;
}

}  // namespace

std::string exponent_report(const exponents::Params& p, const std::optional<Rational>& gamma,
                            exponents::Theorem theorem) {
  std::ostringstream text;
  exponent_record(p, gamma, theorem, &text);
  return text.str();
}

RunResult run(std::string_view subcommand, const RunConfig& cfg, std::ostream& out,
              std::ostream& err) {
  RunResult result;
  const auto& subs = subcommands();
  if (std::find(subs.begin(), subs.end(), subcommand) == subs.end()) {
    err << "unknown subcommand '" << subcommand << "'\n";
    result.exit_code = exit_config;
    return result;
  }
  try {
    validate_config(cfg, subcommand);
  } catch (const ConfigError& e) {
    err << "config error:\n" << e.what() << '\n';
    result.exit_code = exit_config;
    return result;
  }

  Context ctx;
  ctx.cfg = &cfg;
  ctx.subcommand = std::string(subcommand);
  ctx.started = utc_now("%Y-%m-%dT%H:%M:%SZ");
  ctx.dir = make_run_dir(cfg.out_dir, ctx.subcommand);

  int code = exit_failure;
  bool partial = false;
  std::string error;
  try {
    if (subcommand == "check-exponents") code = run_check(ctx, out);
    else if (subcommand == "simulate") code = run_simulate(ctx, out);
    else if (subcommand == "picard") code = run_picard(ctx, out);
    else if (subcommand == "continue") code = run_continue(ctx, out);
    else if (subcommand == "norms") code = run_norms(ctx, out);
    else if (subcommand == "probe") code = run_probe(ctx, out);
    else code = run_sweep(ctx, out, err);
  } catch (const ConfigError& e) {
    partial = true;
    error = e.what();
    code = exit_config;
    err << "config error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    partial = true;
    error = e.what();
    code = exit_failure;
    err << subcommand << " failed: " << e.what() << '\n';
  }
  result.exit_code = code;
  result.dir = ctx.dir;
  result.manifest = finish(ctx, code, partial, error);
  return result;
}

}  // namespace wavelab
