#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace wavelab {

using Rational = mpq_class;

/// Parses "3", "-7/4", "0.125" or "1e-2" into an exact rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);
double to_double(const Rational& value);

/// A rational extended by +infinity.  Lebesgue exponents use this so that
/// q = inf is carried as 1/q = 0 instead of a large finite number.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(const Rational& value) : value_(value) { value_.canonicalize(); }  // NOLINT
  ExtRational(long value) : value_(value) {}             // NOLINT

  static ExtRational infinity();
  /// 1/x with 1/0 = inf and 1/inf = 0.
  static ExtRational from_reciprocal(const Rational& reciprocal);
  static ExtRational parse(std::string_view text);

  bool is_infinite() const { return infinite_; }
  /// Finite value; throws DomainError when infinite.
  const Rational& value() const;
  Rational reciprocal() const;
  double to_double() const;
  std::string to_string() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b);
  friend std::strong_ordering operator<=>(const ExtRational& a,
                                          const ExtRational& b);

 private:
  Rational value_{0};
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const ExtRational& x);

}  // namespace wavelab
