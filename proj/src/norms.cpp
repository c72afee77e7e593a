#include "wavelab/norms.hpp"

#include <algorithm>
#include <cmath>

#include "wavelab/error.hpp"

namespace wavelab {

double spatial_norm(const Field& f, const ExtRational& p, double s) {
  const double pe = p.is_infinite() ? INFINITY : p.to_double();
  if (s == 0.0) return lp_norm(f, pe);
  return lp_norm(fractional_derivative(f, s), pe);
}

double time_norm(const std::vector<double>& values, const ExtRational& q, double dt,
                 QuadRule rule) {
  if (values.empty()) throw ShapeError("empty trajectory");
  if (q.is_infinite()) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  const double qe = q.to_double();
  if (values.size() == 1) return 0.0;
  const auto w = composite_weights(static_cast<int>(values.size()) - 1, rule, dt);
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += w[i] * std::pow(std::abs(values[i]), qe);
  return std::pow(std::max(sum, 0.0), 1.0 / qe);
}

namespace {

// D^s applied once per node, then reused for every spatial exponent.
std::vector<Field> differentiated(const Trajectory& traj, double s) {
  if (s == 0.0) return traj.u;
  std::vector<Field> out;
  out.reserve(traj.size());
  for (const auto& f : traj.u) out.push_back(fractional_derivative(f, s));
  return out;
}

std::vector<double> node_norms(const std::vector<Field>& fields, const ExtRational& p) {
  const double pe = p.is_infinite() ? INFINITY : p.to_double();
  std::vector<double> out;
  out.reserve(fields.size());
  for (const auto& f : fields) out.push_back(lp_norm(f, pe));
  return out;
}

}  // namespace

double mixed_norm(const Trajectory& traj, const MixedNormSpec& spec, double s) {
  traj.validate();
  if (spec.q < ExtRational(1) || spec.p < ExtRational(1)) {
    throw DomainError("mixed norm exponents must be >= 1");
  }
  const auto fields = differentiated(traj, s);
  return time_norm(node_norms(fields, spec.p), spec.q, traj.step(), spec.rule);
}

void require_optimal(const std::vector<exponents::AdmissiblePair>& pairs) {
  if (pairs.empty()) throw ConfigError("pair set is empty");
  for (const auto& p : pairs) {
    const auto c = exponents::classify_pair(p);
    if (c.status != exponents::PairStatus::optimal) {
      std::string why;
      for (const auto& f : c.failed) why += (why.empty() ? "" : "; ") + f;
      throw ConfigError("pair " + p.to_string() + " is not optimal" +
                        (why.empty() ? std::string() : " (" + why + ")"));
    }
  }
}

std::vector<double> pair_norms(const Trajectory& traj,
                               const std::vector<exponents::AdmissiblePair>& pairs, double s) {
  traj.validate();
  const auto fields = differentiated(traj, s);
  const double dt = traj.step();
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) {
    out.push_back(time_norm(node_norms(fields, pair.spatial_exponent()), pair.q, dt));
  }
  return out;
}

double w_norm(const Trajectory& traj, const std::vector<exponents::AdmissiblePair>& pairs,
              double s) {
  require_optimal(pairs);
  const auto v = pair_norms(traj, pairs, s);
  return *std::max_element(v.begin(), v.end());
}

BesovSpec BesovSpec::on_grid(const GridSpec& g, double sigma, const ExtRational& p,
                             const ExtRational& q) {
  const auto r = dyadic_range(g);
  return {sigma, p, q, r.j_min, r.j_max};
}

double besov_norm(const Field& f, const BesovSpec& spec) {
  const auto band = dyadic_range(f.grid);
  if (spec.j_min > spec.j_max) throw DomainError("empty dyadic range");
  if (spec.j_min < band.j_min || spec.j_max > band.j_max) {
    throw DomainError("dyadic range outside the resolvable band of the grid");
  }
  std::vector<double> terms;
  for (int j = spec.j_min; j <= spec.j_max; ++j) {
    const double N = std::ldexp(1.0, j);
    terms.push_back(std::pow(N, spec.sigma) * spatial_norm(lp_project(f, N), spec.p));
  }
  if (spec.q.is_infinite()) return *std::max_element(terms.begin(), terms.end());
  const double q = spec.q.to_double();
  double sum = 0.0;
  for (double t : terms) sum += std::pow(t, q);
  return std::pow(sum, 1.0 / q);
}

}  // namespace wavelab
