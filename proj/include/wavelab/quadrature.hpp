#pragma once

// Composite Newton-Cotes weights on uniform nodes.

#include <string_view>
#include <vector>

namespace wavelab {

enum class QuadRule { trapezoid, simpson };

std::string_view to_string(QuadRule r);
QuadRule parse_quad_rule(std::string_view s);

struct QuadSpec {
  QuadRule rule = QuadRule::simpson;
  int intervals = 64;
};

/// Weights for ∫ over [0, intervals·step] sampled at intervals+1 nodes.
/// Simpson with an odd interval count closes the last three intervals with
/// the 3/8 rule; a single interval falls back to the trapezoid.
std::vector<double> composite_weights(int intervals, QuadRule rule, double step);

/// Weights for ∫_0^{t_i} on a uniform grid where nodes beyond i may be used.
/// Returns i+1 weights, except for Simpson at i = 1 where the quadratic
/// through nodes 0, 1, 2 gives three weights.
std::vector<double> running_weights(int i, QuadRule rule, double step);

}  // namespace wavelab
