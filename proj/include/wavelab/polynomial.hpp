#pragma once

#include <map>
#include <string>
#include <vector>

#include "wavelab/rational.hpp"

namespace wavelab {

/// Multivariate polynomial with exact rational coefficients.  Only what the
/// exponent identities need: ring operations and a zero test.
class Polynomial {
 public:
  using Monomial = std::vector<int>;  // exponent per variable

  explicit Polynomial(int variables = 0) : variables_(variables) {}
  static Polynomial constant(int variables, const Rational& c);
  static Polynomial variable(int variables, int index);

  int variables() const { return variables_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  /// Evaluates at a rational point.
  Rational evaluate(const std::vector<Rational>& point) const;
  std::string to_string(const std::vector<std::string>& names) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.variables_ == b.variables_ && a.terms_ == b.terms_;
  }

 private:
  void add_term(const Monomial& m, const Rational& c);

  int variables_;
  std::map<Monomial, Rational> terms_;
};

/// Quotient of two polynomials, kept unreduced.  Equality is decided by
/// clearing denominators: a/b == c/d iff a*d - c*b is the zero polynomial.
class RationalFunction {
 public:
  RationalFunction(Polynomial num, Polynomial den);
  static RationalFunction constant(int variables, const Rational& c);
  static RationalFunction variable(int variables, int index);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  Rational evaluate(const std::vector<Rational>& point) const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

 private:
  Polynomial num_;
  Polynomial den_;
};

bool identical(const RationalFunction& a, const RationalFunction& b);

}  // namespace wavelab
