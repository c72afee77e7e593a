#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "wavelab/config.hpp"
#include "wavelab/dynamics.hpp"
#include "wavelab/error.hpp"
#include "wavelab/exponents.hpp"
#include "wavelab/harness.hpp"
#include "wavelab/norms.hpp"
#include "wavelab/picard.hpp"
#include "wavelab/propagator.hpp"

namespace py = pybind11;
using namespace wavelab;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

GridSpec make_grid(const std::string& mode, int n, double L) {
  GridSpec g{parse_grid_mode(mode), n, L};
  g.validate();
  return g;
}

Field to_field(const GridSpec& g, const Array& a) {
  if (static_cast<std::size_t>(a.size()) != g.size()) {
    throw ShapeError("array has " + std::to_string(a.size()) + " values, grid needs " +
                     std::to_string(g.size()));
  }
  return Field(g, std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const Field& f) {
  std::vector<py::ssize_t> shape;
  if (f.grid.mode == GridMode::full3d) shape = {f.grid.n, f.grid.n, f.grid.n};
  else shape = {f.grid.n};
  Array out(shape);
  std::copy(f.values.begin(), f.values.end(), out.mutable_data());
  return out;
}

py::dict picard_dict(const PicardReport& r) {
  py::dict d;
  d["T"] = r.T;
  d["a"] = r.a;
  d["d"] = r.d;
  d["ratio"] = r.ratio;
  d["ball_norms"] = r.ball_norms;
  d["outcome"] = std::string(to_string(r.outcome));
  d["iterations"] = r.iterations;
  d["max_ratio"] = r.max_ratio;
  d["contracted"] = r.contracted();
  std::vector<std::string> pairs;
  for (const auto& p : r.pairs) pairs.push_back(p.to_string());
  d["pairs"] = pairs;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pseudospectral lab for u_tt - Δu + |x|^{-b}|u|^α u = 0 in three dimensions.";

  // translators run newest first, so the base class goes in first
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<EligibilityError>(m, "EligibilityError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);

  // exact exponents, exchanged as rational strings
  m.def("theta1", [](const std::string& alpha, const std::string& b) {
    return to_string(exponents::theta1(parse_rational(alpha), parse_rational(b)));
  }, py::arg("alpha"), py::arg("b"));
  m.def("theta2", [](const std::string& alpha, const std::string& gamma, const std::string& b) {
    return to_string(exponents::theta2(parse_rational(alpha), parse_rational(gamma), parse_rational(b)).value);
  }, py::arg("alpha"), py::arg("gamma"), py::arg("b"));
  m.def("default_gamma", [](const std::string& b) {
    return to_string(exponents::default_gamma(parse_rational(b)));
  }, py::arg("b"));
  m.def("classify_pair", [](const std::string& q, const std::string& r) {
    auto pair = exponents::AdmissiblePair::make(ExtRational::parse(q), ExtRational::parse(r));
    return std::string(to_string(exponents::classify_pair(pair).status));
  }, py::arg("q"), py::arg("r"));
  m.def("eligible", [](const std::string& alpha, const std::string& b, const std::string& s,
                       const std::string& theorem) {
    exponents::Params p{parse_rational(alpha), parse_rational(b), parse_rational(s), 3};
    return exponents::validate_params(p, exponents::parse_theorem(theorem)).violations();
  }, py::arg("alpha"), py::arg("b"), py::arg("s") = "0", py::arg("theorem") = "t1.1",
        "Violated hypotheses (empty when eligible).");
  m.def("exponent_report", [](const std::string& alpha, const std::string& b, const std::string& s,
                              const std::string& theorem) {
    exponents::Params p{parse_rational(alpha), parse_rational(b), parse_rational(s), 3};
    return exponent_report(p, std::nullopt, exponents::parse_theorem(theorem));
  }, py::arg("alpha"), py::arg("b"), py::arg("s") = "0", py::arg("theorem") = "t1.1");

  // fields on a grid, as numpy arrays
  m.def("coordinates", [](const std::string& mode, int n, double L) {
    auto g = make_grid(mode, n, L);
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = g.coordinate(i);
    return x;
  }, py::arg("mode") = "radial1d", py::arg("n") = 512, py::arg("box_length") = 32.0);
  m.def("linear_solve", [](const Array& phi, const Array& psi, double t, const std::string& mode,
                           int n, double L) {
    auto g = make_grid(mode, n, L);
    auto s = linear_solve(to_field(g, phi), to_field(g, psi), t);
    return py::make_tuple(to_array(s.u), to_array(s.ut));
  }, py::arg("phi"), py::arg("psi"), py::arg("t"), py::arg("mode") = "radial1d",
        py::arg("n") = 512, py::arg("box_length") = 32.0);
  m.def("energy", [](const Array& u, const Array& ut, double b, double alpha, double epsilon,
                     const std::string& mode, int n, double L) {
    auto g = make_grid(mode, n, L);
    auto e = energy(to_field(g, u), to_field(g, ut), make_weight(g, b, epsilon), alpha);
    py::dict d;
    d["kinetic"] = e.kinetic;
    d["gradient"] = e.gradient;
    d["potential"] = e.potential;
    d["total"] = e.total;
    return d;
  }, py::arg("u"), py::arg("ut"), py::arg("b"), py::arg("alpha"), py::arg("epsilon"),
        py::arg("mode") = "radial1d", py::arg("n") = 512, py::arg("box_length") = 32.0);
  m.def("sobolev_seminorm", [](const Array& f, double s, const std::string& mode, int n, double L) {
    return sobolev_seminorm(to_field(make_grid(mode, n, L), f), s);
  }, py::arg("f"), py::arg("s"), py::arg("mode") = "radial1d", py::arg("n") = 512,
        py::arg("box_length") = 32.0);

  // configuration-driven entry points
  m.def("config_keys", &config_keys);
  m.def("parse_config", [](const std::string& text) {
    return parse_config(text).echo();
  }, py::arg("text"), "Full key = value echo with defaults filled in.");
  m.def("solve_picard", [](const std::string& text) {
    auto cfg = parse_config(text);
    validate_config(cfg, "picard");
    auto [phi, psi] = make_data(cfg);
    auto sol = solve_local(phi, psi, cfg.picard(), cfg.equation());
    py::dict d = picard_dict(sol.report);
    d["times"] = sol.trajectory.times;
    d["u_final"] = to_array(sol.trajectory.u.back());
    return d;
  }, py::arg("config_text"));
  m.def("run", [](const std::string& subcommand, const std::string& text, const std::string& out_dir) {
    auto cfg = parse_config(text);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    std::ostringstream out, err;
    RunResult r;
    {
      py::gil_scoped_release release;
      r = run(subcommand, cfg, out, err);
    }
    return py::make_tuple(r.exit_code, r.dir.string(), r.manifest, out.str(), err.str());
  }, py::arg("subcommand"), py::arg("config_text"), py::arg("out_dir") = "",
        "Returns (exit_code, run_dir, manifest_json, stdout, stderr).");
  m.attr("__version__") = WAVELAB_PY_VERSION;
}
