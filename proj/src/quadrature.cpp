#include "wavelab/quadrature.hpp"

#include <string>

#include "wavelab/error.hpp"

namespace wavelab {

std::string_view to_string(QuadRule r) { return r == QuadRule::simpson ? "simpson" : "trapezoid"; }

QuadRule parse_quad_rule(std::string_view s) {
  if (s == "simpson") return QuadRule::simpson;
  if (s == "trapezoid") return QuadRule::trapezoid;
  throw ConfigError("unknown quadrature rule '" + std::string(s) + "'");
}

namespace {

void add_simpson(std::vector<double>& w, int first, int intervals, double step) {
  for (int k = 0; k < intervals; k += 2) {
    w[static_cast<std::size_t>(first + k)] += step / 3.0;
    w[static_cast<std::size_t>(first + k + 1)] += 4.0 * step / 3.0;
    w[static_cast<std::size_t>(first + k + 2)] += step / 3.0;
  }
}

void add_three_eighths(std::vector<double>& w, int first, double step) {
  const double c = 3.0 * step / 8.0;
  w[static_cast<std::size_t>(first)] += c;
  w[static_cast<std::size_t>(first + 1)] += 3.0 * c;
  w[static_cast<std::size_t>(first + 2)] += 3.0 * c;
  w[static_cast<std::size_t>(first + 3)] += c;
}

}  // namespace

std::vector<double> composite_weights(int intervals, QuadRule rule, double step) {
  if (intervals < 0) throw DomainError("negative interval count");
  std::vector<double> w(static_cast<std::size_t>(intervals) + 1, 0.0);
  if (intervals == 0) return w;
  if (rule == QuadRule::trapezoid || intervals == 1) {
    for (int k = 0; k < intervals; ++k) {
      w[static_cast<std::size_t>(k)] += 0.5 * step;
      w[static_cast<std::size_t>(k + 1)] += 0.5 * step;
    }
    return w;
  }
  if (intervals % 2 == 0) {
    add_simpson(w, 0, intervals, step);
  } else {
    add_simpson(w, 0, intervals - 3, step);
    add_three_eighths(w, intervals - 3, step);
  }
  return w;
}

std::vector<double> running_weights(int i, QuadRule rule, double step) {
  if (i == 1 && rule == QuadRule::simpson) {
    return {5.0 * step / 12.0, 8.0 * step / 12.0, -step / 12.0};
  }
  return composite_weights(i, rule, step);
}

}  // namespace wavelab
