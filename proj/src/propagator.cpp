#include "wavelab/propagator.hpp"

#include <cmath>
#include <string>

#include "wavelab/error.hpp"

namespace wavelab {

PropagatorPlan::PropagatorPlan(const GridSpec& g) : grid_(g), xi_(frequency_magnitudes(g)) {}

std::vector<double> PropagatorPlan::cos_table(double t) const {
  const auto& xi = *xi_;
  std::vector<double> out(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) out[i] = std::cos(xi[i] * t);
  return out;
}

std::vector<double> PropagatorPlan::sinc_table(double t) const {
  const auto& xi = *xi_;
  std::vector<double> out(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    out[i] = xi[i] > 0.0 ? std::sin(xi[i] * t) / xi[i] : t;
  }
  return out;
}

void PropagatorPlan::apply_kdot(SpectralField& F, double t) const {
  const auto& xi = *xi_;
  for (std::size_t i = 0; i < xi.size(); ++i) F.coeffs[i] *= std::cos(xi[i] * t);
}

void PropagatorPlan::apply_k(SpectralField& F, double t) const {
  const auto& xi = *xi_;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    F.coeffs[i] *= xi[i] > 0.0 ? std::sin(xi[i] * t) / xi[i] : t;
  }
}

void PropagatorPlan::apply_kdot_rate(SpectralField& F, double t) const {
  const auto& xi = *xi_;
  for (std::size_t i = 0; i < xi.size(); ++i) F.coeffs[i] *= -xi[i] * std::sin(xi[i] * t);
}

Field apply_kdot(const Field& phi, double t) {
  PropagatorPlan plan(phi.grid);
  auto F = forward(phi);
  plan.apply_kdot(F, t);
  return inverse(F);
}

Field apply_k(const Field& psi, double t) {
  PropagatorPlan plan(psi.grid);
  auto F = forward(psi);
  plan.apply_k(F, t);
  return inverse(F);
}

State linear_solve(const PropagatorPlan& plan, const SpectralField& phi_hat,
                   const SpectralField& psi_hat, double t) {
  const auto& xi = plan.xi();
  SpectralField u(plan.grid()), ut(plan.grid());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const double c = std::cos(xi[i] * t);
    const double sn = std::sin(xi[i] * t);
    const double sinc = xi[i] > 0.0 ? sn / xi[i] : t;
    u.coeffs[i] = c * phi_hat.coeffs[i] + sinc * psi_hat.coeffs[i];
    ut.coeffs[i] = -xi[i] * sn * phi_hat.coeffs[i] + c * psi_hat.coeffs[i];
  }
  return {inverse(u), inverse(ut)};
}

State linear_solve(const Field& phi, const Field& psi, double t) {
  if (!(phi.grid == psi.grid)) throw ShapeError("phi and psi live on different grids");
  PropagatorPlan plan(phi.grid);
  return linear_solve(plan, forward(phi), forward(psi), t);
}

namespace {

State duhamel_impl(const FieldSampler& h, double t, const QuadSpec& q, bool want_velocity) {
  if (q.intervals < 1) throw DomainError("quadrature needs at least one interval");
  const double step = t / q.intervals;
  const auto w = composite_weights(q.intervals, q.rule, step);
  SpectralField acc_u, acc_ut;
  std::unique_ptr<PropagatorPlan> plan;
  for (int j = 0; j <= q.intervals; ++j) {
    const double tau = j * step;
    Field sample = h(tau);
    if (!sample.all_finite()) {
      throw PropagationError("non-finite Duhamel sample at node " + std::to_string(j) +
                             " (tau = " + std::to_string(tau) + ")");
    }
    if (!plan) {
      plan = std::make_unique<PropagatorPlan>(sample.grid);
      acc_u = SpectralField(sample.grid);
      acc_ut = SpectralField(sample.grid);
    }
    const auto F = forward(sample);
    const auto& xi = plan->xi();
    const double lag = t - tau;
    const double wj = w[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < xi.size(); ++i) {
      const double sinc = xi[i] > 0.0 ? std::sin(xi[i] * lag) / xi[i] : lag;
      acc_u.coeffs[i] += wj * sinc * F.coeffs[i];
      if (want_velocity) acc_ut.coeffs[i] += wj * std::cos(xi[i] * lag) * F.coeffs[i];
    }
  }
  State out;
  out.u = inverse(acc_u);
  if (want_velocity) out.ut = inverse(acc_ut);
  return out;
}

}  // namespace

Field duhamel(const FieldSampler& h, double t, const QuadSpec& q) {
  return duhamel_impl(h, t, q, false).u;
}

State duhamel_state(const FieldSampler& h, double t, const QuadSpec& q) {
  return duhamel_impl(h, t, q, true);
}

std::vector<SpectralField> duhamel_on_nodes(const PropagatorPlan& plan,
                                            const std::vector<SpectralField>& h_hat, double dt,
                                            QuadRule rule, std::vector<SpectralField>* velocity) {
  const int S = static_cast<int>(h_hat.size());
  if (S < 3) throw DomainError("snapshot grid needs at least three nodes");
  for (const auto& F : h_hat) {
    if (!(F.grid == plan.grid())) throw ShapeError("Duhamel sample on the wrong grid");
  }
  std::vector<std::vector<double>> weights(static_cast<std::size_t>(S));
  for (int i = 1; i < S; ++i) weights[static_cast<std::size_t>(i)] = running_weights(i, rule, dt);

  std::vector<SpectralField> acc(static_cast<std::size_t>(S), SpectralField(plan.grid()));
  if (velocity) velocity->assign(static_cast<std::size_t>(S), SpectralField(plan.grid()));
  const std::size_t N = plan.grid().size();

  // Loop over lags so each multiplier table is built once; lag -1 only
  // occurs in the start-up rule at node 1.
  for (int m = -1; m < S; ++m) {
    const auto sinc = plan.sinc_table(m * dt);
    std::vector<double> cosine;
    if (velocity) cosine = plan.cos_table(m * dt);
    for (int i = std::max(1, m); i < S; ++i) {
      const int j = i - m;
      const auto& wi = weights[static_cast<std::size_t>(i)];
      if (j < 0 || j >= static_cast<int>(wi.size()) || j >= S) continue;
      const double w = wi[static_cast<std::size_t>(j)];
      const auto& F = h_hat[static_cast<std::size_t>(j)].coeffs;
      auto& A = acc[static_cast<std::size_t>(i)].coeffs;
      for (std::size_t k = 0; k < N; ++k) A[k] += (w * sinc[k]) * F[k];
      if (velocity) {
        auto& V = (*velocity)[static_cast<std::size_t>(i)].coeffs;
        for (std::size_t k = 0; k < N; ++k) V[k] += (w * cosine[k]) * F[k];
      }
    }
  }
  return acc;
}

}  // namespace wavelab
