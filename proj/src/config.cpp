#include "wavelab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "wavelab/dynamics.hpp"
#include "wavelab/error.hpp"
#include "wavelab/norms.hpp"

namespace wavelab {

std::string_view to_string(DataKind k) {
  switch (k) {
    case DataKind::gaussian: return "gaussian";
    case DataKind::shell: return "shell";
    case DataKind::bandlimited: return "bandlimited";
    case DataKind::zero: return "zero";
  }
  return "unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string show(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double to_real(std::string_view v) {
  double x = 0.0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size() || !std::isfinite(x)) {
    throw ConfigError("expected a real number, got '" + std::string(v) + "'");
  }
  return x;
}

template <class Int>
Int to_integer(std::string_view v) {
  Int x = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw ConfigError("expected an integer, got '" + std::string(v) + "'");
  }
  return x;
}

bool to_bool(std::string_view v) {
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  throw ConfigError("expected true|false, got '" + std::string(v) + "'");
}

Rational to_rational(std::string_view v) {
  try {
    return parse_rational(v);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

DataKind to_data_kind(std::string_view v) {
  for (auto k : {DataKind::gaussian, DataKind::shell, DataKind::bandlimited, DataKind::zero}) {
    if (to_string(k) == v) return k;
  }
  throw ConfigError("unknown data.kind '" + std::string(v) + "'");
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

struct KeyDef {
  std::string key;
  Setter set;
};

const std::vector<KeyDef>& key_defs() {
  static const std::vector<KeyDef> defs = {
      {"grid.mode", [](RunConfig& c, std::string_view v) {
         try {
           c.grid.mode = parse_grid_mode(v);
         } catch (const Error& e) {
           throw ConfigError(e.what());
         }
       }},
      {"grid.n", [](RunConfig& c, std::string_view v) { c.grid.n = to_integer<int>(v); }},
      {"grid.box_length", [](RunConfig& c, std::string_view v) { c.grid.box_length = to_real(v); }},
      {"grid.dealias", [](RunConfig& c, std::string_view v) { c.dealias = to_bool(v); }},
      {"eq.alpha", [](RunConfig& c, std::string_view v) { c.params.alpha = to_rational(v); }},
      {"eq.b", [](RunConfig& c, std::string_view v) { c.params.b = to_rational(v); }},
      {"eq.s", [](RunConfig& c, std::string_view v) { c.params.s = to_rational(v); }},
      {"eq.epsilon", [](RunConfig& c, std::string_view v) {
         if (v == "auto") c.epsilon.reset();
         else c.epsilon = to_real(v);
       }},
      {"eq.gamma", [](RunConfig& c, std::string_view v) {
         if (v == "auto") c.gamma.reset();
         else c.gamma = to_rational(v);
       }},
      {"eq.theorem", [](RunConfig& c, std::string_view v) {
         try {
           c.theorem = exponents::parse_theorem(v);
         } catch (const Error& e) {
           throw ConfigError(e.what());
         }
       }},
      {"time.T", [](RunConfig& c, std::string_view v) { c.T = to_real(v); }},
      {"time.dt", [](RunConfig& c, std::string_view v) { c.dt = to_real(v); }},
      {"time.snapshots", [](RunConfig& c, std::string_view v) { c.snapshots = to_integer<int>(v); }},
      {"time.horizon", [](RunConfig& c, std::string_view v) { c.horizon = to_real(v); }},
      {"time.rule", [](RunConfig& c, std::string_view v) { c.rule = parse_quad_rule(v); }},
      {"picard.max_iters", [](RunConfig& c, std::string_view v) { c.max_iters = to_integer<int>(v); }},
      {"picard.tol", [](RunConfig& c, std::string_view v) { c.tol = to_real(v); }},
      {"picard.a_policy", [](RunConfig& c, std::string_view v) {
         if (v == "auto") c.a.reset();
         else c.a = to_real(v);
       }},
      {"picard.pair_set", [](RunConfig& c, std::string_view v) {
         c.pair_set = v == "default" ? std::string() : std::string(v);
       }},
      {"picard.norm", [](RunConfig& c, std::string_view v) { c.norm = parse_working_norm(v); }},
      {"data.kind", [](RunConfig& c, std::string_view v) { c.data.kind = to_data_kind(v); }},
      {"data.amplitude", [](RunConfig& c, std::string_view v) { c.data.amplitude = to_real(v); }},
      {"data.width", [](RunConfig& c, std::string_view v) { c.data.width = to_real(v); }},
      {"data.radius", [](RunConfig& c, std::string_view v) { c.data.radius = to_real(v); }},
      {"data.velocity_amplitude",
       [](RunConfig& c, std::string_view v) { c.data.velocity_amplitude = to_real(v); }},
      {"continue.t_cap", [](RunConfig& c, std::string_view v) { c.cont_T_cap = to_real(v); }},
      {"continue.t_min", [](RunConfig& c, std::string_view v) { c.cont_T_min = to_real(v); }},
      {"continue.max_intervals",
       [](RunConfig& c, std::string_view v) { c.cont_max_intervals = to_integer<int>(v); }},
      {"continue.bisect", [](RunConfig& c, std::string_view v) { c.cont_bisect = to_bool(v); }},
      {"continue.delta_lo", [](RunConfig& c, std::string_view v) { c.delta_lo = to_real(v); }},
      {"continue.delta_hi", [](RunConfig& c, std::string_view v) { c.delta_hi = to_real(v); }},
      {"continue.delta_steps",
       [](RunConfig& c, std::string_view v) { c.delta_steps = to_integer<int>(v); }},
      {"probes.name", [](RunConfig& c, std::string_view v) {
         if (v != "all") parse_probe_name(v);
         c.probe = std::string(v);
       }},
      {"probes.samples", [](RunConfig& c, std::string_view v) { c.probe_samples = to_integer<int>(v); }},
      {"probes.seed", [](RunConfig& c, std::string_view v) { c.seed = to_integer<std::uint64_t>(v); }},
      {"probes.family", [](RunConfig& c, std::string_view v) { c.family = parse_sample_family(v); }},
      {"probes.gn_p", [](RunConfig& c, std::string_view v) { c.gn_p = to_real(v); }},
      {"probes.zero_velocity", [](RunConfig& c, std::string_view v) { c.zero_velocity = to_bool(v); }},
      {"output.dir", [](RunConfig& c, std::string_view v) { c.out_dir = std::string(v); }},
      {"output.formats", [](RunConfig& c, std::string_view v) {
         c.csv = c.svg = false;
         std::string_view rest = v;
         while (!rest.empty()) {
           const auto comma = rest.find(',');
           const auto item = trim(rest.substr(0, comma));
           if (item == "csv") c.csv = true;
           else if (item == "svg") c.svg = true;
           else throw ConfigError("unknown output format '" + std::string(item) + "'");
           rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
         }
         if (!c.csv) throw ConfigError("output.formats must include csv");
       }},
  };
  return defs;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& d : key_defs()) k.push_back(d.key);
    return k;
  }();
  return keys;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::vector<std::string> errors;
  std::map<std::string, int> seen;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back(where + "expected 'section.key = value'");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    if (key.find('.') == std::string::npos) {
      errors.push_back(where + "key '" + key + "' is not of the form section.key");
      continue;
    }
    const auto& defs = key_defs();
    auto it = std::find_if(defs.begin(), defs.end(), [&](const KeyDef& d) { return d.key == key; });
    if (it == defs.end()) {
      errors.push_back(where + "unknown key '" + key + "'");
      continue;
    }
    if (auto [s, inserted] = seen.emplace(key, lineno); !inserted) {
      errors.push_back(where + "duplicate key '" + key + "' (first set on line " +
                       std::to_string(s->second) + ")");
      continue;
    }
    if (value.empty()) {
      errors.push_back(where + "missing value for '" + key + "'");
      continue;
    }
    try {
      it->set(cfg, value);
      cfg.explicit_keys[key] = std::string(value);
    } catch (const Error& e) {
      errors.push_back(where + key + ": " + e.what());
    }
  }
  if (!errors.empty()) {
    std::string msg;
    for (const auto& e : errors) msg += (msg.empty() ? "" : "\n") + e;
    throw ConfigError(msg);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

EquationParams RunConfig::equation() const { return {params, epsilon, gamma}; }

PicardConfig RunConfig::picard() const {
  PicardConfig p;
  p.T = T;
  p.max_iters = max_iters;
  p.tol = tol;
  p.a = a;
  p.snapshots = snapshots;
  p.pairs = pairs();
  p.norm = norm;
  p.rule = rule;
  p.dealias = dealias;
  return p;
}

ContinuationOptions RunConfig::continuation() const {
  return {cont_T_cap, cont_T_min, cont_max_intervals};
}

std::vector<exponents::AdmissiblePair> RunConfig::pairs() const {
  if (pair_set.empty()) return {};
  return exponents::parse_pair_set(pair_set, params.n);
}

std::map<std::string, std::string> RunConfig::echo() const {
  std::map<std::string, std::string> m;
  m["grid.mode"] = std::string(to_string(grid.mode));
  m["grid.n"] = std::to_string(grid.n);
  m["grid.box_length"] = show(grid.box_length);
  m["grid.dealias"] = dealias ? "true" : "false";
  m["eq.alpha"] = to_string(params.alpha);
  m["eq.b"] = to_string(params.b);
  m["eq.s"] = to_string(params.s);
  m["eq.epsilon"] = epsilon ? show(*epsilon) : "auto";
  m["eq.gamma"] = gamma ? to_string(*gamma) : "auto";
  m["eq.theorem"] = std::string(exponents::theorem_tag(theorem));
  m["time.T"] = show(T);
  m["time.dt"] = show(dt);
  m["time.snapshots"] = std::to_string(snapshots);
  m["time.horizon"] = show(horizon);
  m["time.rule"] = std::string(to_string(rule));
  m["picard.max_iters"] = std::to_string(max_iters);
  m["picard.tol"] = show(tol);
  m["picard.a_policy"] = a ? show(*a) : "auto";
  m["picard.pair_set"] = pair_set.empty() ? "default" : pair_set;
  m["picard.norm"] = std::string(to_string(norm));
  m["data.kind"] = std::string(to_string(data.kind));
  m["data.amplitude"] = show(data.amplitude);
  m["data.width"] = show(data.width);
  m["data.radius"] = show(data.radius);
  m["data.velocity_amplitude"] = show(data.velocity_amplitude);
  m["continue.t_cap"] = show(cont_T_cap);
  m["continue.t_min"] = show(cont_T_min);
  m["continue.max_intervals"] = std::to_string(cont_max_intervals);
  m["continue.bisect"] = cont_bisect ? "true" : "false";
  m["continue.delta_lo"] = show(delta_lo);
  m["continue.delta_hi"] = show(delta_hi);
  m["continue.delta_steps"] = std::to_string(delta_steps);
  m["probes.name"] = probe;
  m["probes.samples"] = std::to_string(probe_samples);
  m["probes.seed"] = seed ? std::to_string(*seed) : "none";
  m["probes.family"] = std::string(to_string(family));
  m["probes.gn_p"] = show(gn_p);
  m["probes.zero_velocity"] = zero_velocity ? "true" : "false";
  m["output.dir"] = out_dir;
  m["output.formats"] = svg ? "csv,svg" : "csv";
  return m;
}

double support_radius(const Field& f) {
  double peak = 0.0;
  for (double v : f.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  const GridSpec& g = f.grid;
  double R = 0.0;
  if (g.mode == GridMode::radial1d) {
    for (int j = 0; j < g.n; ++j) {
      if (std::abs(f.values[static_cast<std::size_t>(j)]) > 1e-12 * peak) {
        R = std::max(R, std::abs(g.coordinate(j)));
      }
    }
    return R;
  }
  std::size_t idx = 0;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      for (int k = 0; k < g.n; ++k, ++idx) {
        if (std::abs(f.values[idx]) > 1e-12 * peak) {
          const double x = g.coordinate(i), y = g.coordinate(j), z = g.coordinate(k);
          R = std::max(R, std::sqrt(x * x + y * y + z * z));
        }
      }
    }
  }
  return R;
}

std::pair<Field, Field> make_data(const RunConfig& cfg) {
  const auto& d = cfg.data;
  std::function<double(double)> shape;
  switch (d.kind) {
    case DataKind::gaussian:
      shape = [w = d.width](double r) { return std::exp(-r * r / (w * w)); };
      break;
    case DataKind::shell:
      shape = [w = d.width, r0 = d.radius](double r) {
        const double q = r * r - r0 * r0;
        return std::exp(-q * q / (w * w * w * w));
      };
      break;
    case DataKind::bandlimited:
      shape = [w = d.width](double r) { return dilation_profile(r / w); };
      break;
    case DataKind::zero:
      return {Field(cfg.grid), Field(cfg.grid)};
  }
  Field base = Field::from_radial(cfg.grid, shape);
  Field phi = d.amplitude * Field(base);
  Field psi = d.velocity_amplitude * Field(base);
  return {phi, psi};
}

void validate_config(const RunConfig& cfg, std::string_view sub) {
  std::vector<std::string> bad;
  auto attempt = [&](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      bad.emplace_back(e.what());
    }
  };
  const bool needs_grid = sub != "check-exponents";
  const bool evolves = sub == "simulate" || sub == "picard" || sub == "continue" || sub == "sweep";
  const bool picard_like = sub == "picard" || sub == "continue" || sub == "sweep";

  if (needs_grid) attempt([&] { cfg.grid.validate(); });
  for (const auto& v : exponents::params_invariant_violations(cfg.params)) bad.push_back(v);
  if (cfg.params.n != 3) bad.push_back("n = 3 required");

  if (picard_like) {
    const auto theorem = cfg.norm == WorkingNorm::hs ? exponents::Theorem::local_hs
                                                     : exponents::Theorem::local_l2;
    if (cfg.norm == WorkingNorm::hs && cfg.theorem != exponents::Theorem::local_hs) {
      bad.push_back("picard.norm = hs requires eq.theorem = t1.3");
    }
    const auto report = exponents::validate_params(cfg.params, theorem);
    for (const auto& v : report.violations()) bad.push_back(v);
  }
  if (cfg.gamma) {
    attempt([&] { exponents::theta2(cfg.params.alpha, *cfg.gamma, cfg.params.b, cfg.params.n); });
  }
  if (cfg.epsilon) {
    if (*cfg.epsilon < 0.0) bad.push_back("eq.epsilon must be >= 0");
    if (*cfg.epsilon == 0.0 && cfg.params.b > 0 && cfg.grid.mode == GridMode::full3d) {
      bad.push_back("eq.epsilon = 0 is only allowed with grid.mode = radial1d");
    }
  }

  if (!(cfg.T > 0.0)) bad.push_back("time.T must be positive");
  if (!(cfg.horizon > 0.0)) bad.push_back("time.horizon must be positive");
  if (cfg.snapshots < 9) bad.push_back("time.snapshots must be >= 9");
  if (!(cfg.dt > 0.0)) bad.push_back("time.dt must be positive");
  if (sub == "simulate" && needs_grid && cfg.dt > 0.0) {
    attempt([&] {
      cfg.grid.validate();
      if (cfg.dt > stability_limit(cfg.grid)) {
        bad.push_back("time.dt = " + show(cfg.dt) + " exceeds the stability limit " +
                      show(stability_limit(cfg.grid)));
      }
    });
    const double steps = cfg.T / cfg.dt;
    if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps)) {
      bad.push_back("time.T must be an integer multiple of time.dt");
    }
  }
  if (cfg.max_iters < 1) bad.push_back("picard.max_iters must be >= 1");
  if (!(cfg.tol > 0.0)) bad.push_back("picard.tol must be positive");
  if (cfg.a && *cfg.a < 0.0) bad.push_back("picard.a_policy radius must be >= 0");
  if (!cfg.pair_set.empty()) attempt([&] { require_optimal(cfg.pairs()); });

  if (!(cfg.data.width > 0.0)) bad.push_back("data.width must be positive");
  if (cfg.cont_T_cap <= 0.0 || cfg.cont_T_min <= 0.0 || cfg.cont_T_min > cfg.cont_T_cap) {
    bad.push_back("continue.t_min/t_cap must satisfy 0 < t_min <= t_cap");
  }
  if (cfg.cont_max_intervals < 1) bad.push_back("continue.max_intervals must be >= 1");
  if (!(cfg.delta_lo > 0.0) || !(cfg.delta_hi > cfg.delta_lo)) {
    bad.push_back("continue.delta_lo/delta_hi must satisfy 0 < delta_lo < delta_hi");
  }

  if (sub == "probe") {
    if (!cfg.seed) bad.push_back("probes.seed is mandatory for probe runs");
    if (cfg.probe_samples < 1) bad.push_back("probes.samples must be >= 1");
    if (cfg.probe == "all" || parse_probe_name(cfg.probe) == ProbeName::gagliardo_nirenberg) {
      if (!(cfg.gn_p > 1.0) || 1.5 - 2.0 / (cfg.gn_p - 1.0) < 0.0) {
        bad.push_back("probes.gn_p must satisfy 3/2 - 2/(p-1) >= 0");
      }
    }
    if (cfg.probe == "all" || parse_probe_name(cfg.probe) == ProbeName::nonlinear ||
        parse_probe_name(cfg.probe) == ProbeName::nonlinear_hs) {
      attempt([&] { exponents::theta1(cfg.params.alpha, cfg.params.b); });
    }
  }

  // Finite propagation speed: the data's support must stay away from the
  // periodic box boundary over the run.
  if (evolves && bad.empty()) {
    const double span = sub == "continue" ? cfg.horizon : cfg.T;
    const auto [phi, psi] = make_data(cfg);
    const double R = std::max(support_radius(phi), support_radius(psi));
    if (0.5 * cfg.grid.box_length - R <= span) {
      bad.push_back("box too small: L/2 - support radius = " +
                    show(0.5 * cfg.grid.box_length - R) + " must exceed the run length " +
                    show(span));
    }
  }

  if (!bad.empty()) {
    std::string msg;
    for (const auto& b : bad) msg += (msg.empty() ? "" : "\n") + b;
    throw ConfigError(msg);
  }
}

}  // namespace wavelab
