#include "wavelab/picard.hpp"

#include <algorithm>
#include <cmath>

#include "wavelab/error.hpp"
#include "wavelab/norms.hpp"

namespace wavelab {

std::string_view to_string(WorkingNorm n) { return n == WorkingNorm::l2 ? "l2" : "hs"; }

WorkingNorm parse_working_norm(std::string_view s) {
  if (s == "l2") return WorkingNorm::l2;
  if (s == "hs") return WorkingNorm::hs;
  throw ConfigError("unknown working norm '" + std::string(s) + "' (expected l2|hs)");
}

std::string_view to_string(PicardOutcome o) {
  switch (o) {
    case PicardOutcome::converged: return "converged";
    case PicardOutcome::ball_escape: return "ball_escape";
    case PicardOutcome::max_iters: return "max_iters";
  }
  return "unknown";
}

Rational EquationParams::lebesgue_gamma() const {
  return gamma ? *gamma : exponents::default_gamma(params.b, params.n);
}

void PicardConfig::validate() const {
  std::vector<std::string> bad;
  if (!(T > 0.0) || !std::isfinite(T)) bad.push_back("T must be positive");
  if (max_iters < 1) bad.push_back("max_iters must be >= 1");
  if (!(tol > 0.0)) bad.push_back("tol must be positive");
  if (snapshots < 9) bad.push_back("snapshots must be >= 9");
  if (a && !(*a >= 0.0)) bad.push_back("explicit ball radius must be >= 0");
  if (!bad.empty()) {
    std::string msg = "invalid Picard configuration: ";
    for (std::size_t i = 0; i < bad.size(); ++i) msg += (i ? "; " : "") + bad[i];
    throw ConfigError(msg);
  }
}

namespace {

std::vector<exponents::AdmissiblePair> resolve_pairs(const EquationParams& eq,
                                                     const PicardConfig& cfg) {
  if (!cfg.pairs.empty()) {
    require_optimal(cfg.pairs);
    return cfg.pairs;
  }
  if (eq.params.b > 0 && eq.params.b < Rational(eq.params.n, 2)) {
    return exponents::default_pair_set(eq.params.alpha, eq.params.b, eq.lebesgue_gamma(),
                                       eq.params.n);
  }
  return exponents::parse_pair_set("inf:2,4:4", eq.params.n);
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

void require_eligible(const EquationParams& eq, const PicardConfig& cfg) {
  const auto theorem =
      cfg.norm == WorkingNorm::l2 ? exponents::Theorem::local_l2 : exponents::Theorem::local_hs;
  const auto report = exponents::validate_params(eq.params, theorem);
  if (report.passed()) return;
  std::string msg = "parameters not eligible: ";
  const auto v = report.violations();
  for (std::size_t i = 0; i < v.size(); ++i) msg += (i ? "; " : "") + v[i];
  throw EligibilityError(msg);
}

}  // namespace

PicardEngine::PicardEngine(const GridSpec& g, const EquationParams& eq, const PicardConfig& cfg)
    : grid_(g), eq_(eq), cfg_(cfg), plan_(g) {
  g.validate();
  cfg.validate();
  if (cfg.require_eligible) require_eligible(eq, cfg);
  weight_ = make_weight(g, eq.b(), eq.epsilon_on(g));
  pairs_ = resolve_pairs(eq, cfg);
}

Trajectory PicardEngine::linear(const Field& phi, const Field& psi, double t0) const {
  if (!(phi.grid == grid_) || !(psi.grid == grid_)) throw ShapeError("data on the wrong grid");
  const auto P = forward(phi);
  const auto Q = forward(psi);
  Trajectory tr;
  tr.grid = grid_;
  tr.times = uniform_nodes(t0, cfg_.T, cfg_.snapshots);
  for (double t : tr.times) {
    auto s = linear_solve(plan_, P, Q, t - t0);
    tr.u.push_back(std::move(s.u));
    if (cfg_.velocities) tr.ut.push_back(std::move(s.ut));
  }
  return tr;
}

Trajectory PicardEngine::contraction_map(const Trajectory& u, const Trajectory& lin,
                                         int iteration) const {
  if (u.size() != lin.size()) throw ShapeError("iterate and linear part differ in node count");
  const double alpha = eq_.alpha();
  std::vector<SpectralField> h_hat;
  h_hat.reserve(u.size());
  for (const auto& f : u.u) {
    auto F = forward(nonlinearity(f, weight_, alpha));
    if (cfg_.dealias) dealias_two_thirds(F);
    h_hat.push_back(std::move(F));
  }
  const double dt = cfg_.T / (cfg_.snapshots - 1);
  std::vector<SpectralField> vel;
  const bool want_v = cfg_.velocities && lin.has_velocity();
  auto G = duhamel_on_nodes(plan_, h_hat, dt, cfg_.rule, want_v ? &vel : nullptr);

  Trajectory out;
  out.grid = grid_;
  out.times = lin.times;
  out.u.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    Field v = lin.u[i];
    if (i > 0) v -= inverse(G[i]);
    if (!v.all_finite()) {
      throw DivergenceError("non-finite Picard iterate at snapshot " + std::to_string(i), iteration);
    }
    out.u.push_back(std::move(v));
    if (want_v) {
      Field w = lin.ut[i];
      if (i > 0) w -= inverse(vel[i]);
      out.ut.push_back(std::move(w));
    }
  }
  return out;
}

double PicardEngine::working_norm(const Trajectory& traj) const {
  const double l2 = max_of(pair_norms(traj, pairs_, 0.0));
  if (cfg_.norm == WorkingNorm::l2) return l2;
  return l2 + max_of(pair_norms(traj, pairs_, eq_.s()));
}

double PicardEngine::auto_radius(const Field& phi, const Field& psi) const {
  if (cfg_.norm == WorkingNorm::l2) {
    return 2.0 * (sobolev_seminorm(phi, 1.0) + lp_norm(psi, 2.0));
  }
  const double s = eq_.s();
  return 2.0 * (sobolev_seminorm(phi, s + 1.0) + sobolev_seminorm(psi, s));
}

LocalSolution PicardEngine::solve(const Field& phi, const Field& psi, double t0) const {
  LocalSolution sol;
  auto& rep = sol.report;
  rep.T = cfg_.T;
  rep.pairs = pairs_;
  rep.a = cfg_.a ? *cfg_.a : auto_radius(phi, psi);

  const Trajectory lin = linear(phi, psi, t0);
  Trajectory U = lin;
  for (int k = 1; k <= cfg_.max_iters; ++k) {
    Trajectory V = contraction_map(U, lin, k);
    const double d = working_norm(difference(V, U));
    if (!std::isfinite(d)) throw DivergenceError("non-finite Picard difference", k);
    const double ball = working_norm(V);
    rep.d.push_back(d);
    rep.ball_norms.push_back(ball);
    if (k > 1) {
      const double prev = rep.d[rep.d.size() - 2];
      const double r = prev > 0.0 ? d / prev : 0.0;
      rep.ratio.push_back(r);
      rep.max_ratio = std::max(rep.max_ratio, r);
    }
    rep.iterations = k;
    U = std::move(V);
    if (cfg_.check_ball && ball > rep.a * (1.0 + 1e-12)) {
      rep.outcome = PicardOutcome::ball_escape;
      break;
    }
    if (d <= cfg_.tol) {
      rep.outcome = PicardOutcome::converged;
      break;
    }
  }
  sol.trajectory = std::move(U);
  return sol;
}

LocalSolution solve_local(const Field& phi, const Field& psi, const PicardConfig& cfg,
                          const EquationParams& eq) {
  return PicardEngine(phi.grid, eq, cfg).solve(phi, psi);
}

ThresholdResult bisect_threshold(const Field& phi, const Field& psi, PicardConfig cfg,
                                 const EquationParams& eq, double T_lo, double T_hi, int steps) {
  if (!(T_lo > 0.0) || !(T_hi > T_lo)) throw DomainError("bisect_threshold needs 0 < T_lo < T_hi");
  ThresholdResult res;
  cfg.velocities = false;
  auto accept = [&](double T) {
    cfg.T = T;
    ThresholdSample s{T, 0.0, PicardOutcome::max_iters, false};
    try {
      const auto sol = solve_local(phi, psi, cfg, eq);
      s.max_ratio = sol.report.max_ratio;
      s.outcome = sol.report.outcome;
      s.accepted = sol.report.contracted();
    } catch (const DivergenceError&) {
      s.accepted = false;
    }
    res.samples.push_back(s);
    return s.accepted;
  };

  double lo = T_lo, hi = T_hi;
  int guard = 0;
  while (!accept(lo)) {
    if (++guard > 20) return res;
    hi = lo;
    lo *= 0.5;
  }
  guard = 0;
  while (accept(hi)) {
    if (++guard > 20) {
      res.T_star = hi;
      return res;
    }
    lo = hi;
    hi *= 2.0;
  }
  res.bracketed = true;
  for (int i = 0; i < steps; ++i) {
    const double mid = std::sqrt(lo * hi);
    (accept(mid) ? lo : hi) = mid;
  }
  res.T_star = lo;
  return res;
}

std::vector<double> ContinuationResult::accepted_lengths() const {
  std::vector<double> out;
  for (const auto& r : intervals) {
    if (r.accepted) out.push_back(r.T);
  }
  return out;
}

ContinuationResult continue_solution(const Field& phi, const Field& psi, double horizon,
                                     PicardConfig cfg, const EquationParams& eq,
                                     const ContinuationOptions& opts) {
  if (!(horizon > 0.0)) throw DomainError("continuation horizon must be positive");
  cfg.velocities = true;
  ContinuationResult res;
  res.trajectory.grid = phi.grid;
  const WeightField weight = make_weight(phi.grid, eq.b(), eq.epsilon_on(phi.grid));
  const double alpha = eq.alpha();

  Field u = phi, ut = psi;
  double t = 0.0;
  double T = std::min(cfg.T, opts.T_cap);
  res.trajectory.times.push_back(0.0);
  res.trajectory.u.push_back(u);
  res.trajectory.ut.push_back(ut);
  res.energy.push_back(energy(u, ut, weight, alpha, 0.0));

  int attempts = 0;
  const double eps_t = 1e-12 * std::max(1.0, horizon);
  while (t < horizon - eps_t) {
    if (attempts++ >= opts.max_intervals) {
      res.stop_reason = "interval cap reached";
      return res;
    }
    const double T_try = std::min(T, horizon - t);
    cfg.T = T_try;
    IntervalRecord rec;
    rec.t0 = t;
    rec.T = T_try;
    LocalSolution sol;
    try {
      sol = PicardEngine(phi.grid, eq, cfg).solve(u, ut, t);
      rec.iterations = sol.report.iterations;
      rec.max_ratio = sol.report.max_ratio;
      rec.outcome = sol.report.outcome;
      rec.accepted = sol.report.contracted();
    } catch (const DivergenceError& e) {
      rec.iterations = e.iteration();
      rec.accepted = false;
    }
    if (!rec.accepted) {
      res.intervals.push_back(rec);
      T = 0.5 * T_try;
      if (T < opts.T_min) {
        res.stop_reason = "interval length fell below T_min";
        return res;
      }
      continue;
    }
    const auto& tr = sol.trajectory;
    const double e0 = energy(tr.u.front(), tr.ut.front(), weight, alpha, t).total;
    for (std::size_t i = 1; i < tr.size(); ++i) {
      auto e = energy(tr.u[i], tr.ut[i], weight, alpha, tr.times[i]);
      if (e0 > 0.0) rec.energy_drift = std::max(rec.energy_drift, std::abs(e.total - e0) / e0);
      res.energy.push_back(e);
      res.trajectory.times.push_back(tr.times[i]);
      res.trajectory.u.push_back(tr.u[i]);
      res.trajectory.ut.push_back(tr.ut[i]);
    }
    res.intervals.push_back(rec);
    u = tr.u.back();
    ut = tr.ut.back();
    t += T_try;
    T = std::min(2.0 * T_try, opts.T_cap);
  }
  res.reached_horizon = true;
  res.stop_reason = "horizon reached";
  return res;
}

SmallDataRun run_small_data(const Field& phi, const Field& psi, double delta, double horizon,
                            const PicardConfig& cfg, const EquationParams& eq,
                            const ContinuationOptions& opts) {
  SmallDataRun run;
  run.delta = delta;
  const Field p = delta * Field(phi);
  const Field q = delta * Field(psi);
  run.continuation = continue_solution(p, q, horizon, cfg, eq, opts);
  run.reached_horizon = run.continuation.reached_horizon;

  const auto& tr = run.continuation.trajectory;
  PropagatorPlan plan(phi.grid);
  const auto P = forward(p);
  const auto Q = forward(q);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    run.sup_energy_norm = std::max(run.sup_energy_norm, energy_norm(tr.u[i], tr.ut[i]));
    const auto lin = linear_solve(plan, P, Q, tr.times[i]);
    run.sup_linear_energy_norm = std::max(run.sup_linear_energy_norm, energy_norm(lin.u, lin.ut));
  }
  run.growth = run.sup_linear_energy_norm > 0.0 ? run.sup_energy_norm / run.sup_linear_energy_norm
                                                : 1.0;
  run.within_bound = run.reached_horizon && run.growth <= 2.0;
  for (const auto& r : run.continuation.intervals) {
    if (r.accepted) run.max_energy_drift = std::max(run.max_energy_drift, r.energy_drift);
  }

  auto lengths = run.continuation.accepted_lengths();
  if (run.reached_horizon && lengths.size() > 1) lengths.pop_back();  // clipped final interval
  run.intervals_shrink = lengths.size() > 1 && lengths.back() < lengths.front() &&
                         std::is_sorted(lengths.rbegin(), lengths.rend());
  return run;
}

DeltaBisection bisect_delta(const Field& phi, const Field& psi, double horizon,
                            const PicardConfig& cfg, const EquationParams& eq, double delta_lo,
                            double delta_hi, int steps, const ContinuationOptions& opts) {
  if (!(delta_lo > 0.0) || !(delta_hi > delta_lo)) {
    throw DomainError("bisect_delta needs 0 < delta_lo < delta_hi");
  }
  DeltaBisection res;
  auto ok = [&](double d) {
    res.runs.push_back(run_small_data(phi, psi, d, horizon, cfg, eq, opts));
    return res.runs.back().within_bound;
  };
  double lo = delta_lo, hi = delta_hi;
  int guard = 0;
  while (!ok(lo)) {
    if (++guard > 6) return res;
    hi = lo;
    lo *= 0.1;
  }
  guard = 0;
  while (ok(hi)) {
    if (++guard > 6) {
      res.delta_star = hi;
      res.found = true;
      return res;
    }
    lo = hi;
    hi *= 10.0;
  }
  for (int i = 0; i < steps; ++i) {
    const double mid = std::sqrt(lo * hi);
    (ok(mid) ? lo : hi) = mid;
  }
  res.delta_star = lo;
  res.found = true;
  return res;
}

}  // namespace wavelab
