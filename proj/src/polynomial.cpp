#include "wavelab/polynomial.hpp"

#include <sstream>

#include "wavelab/error.hpp"

namespace wavelab {

Polynomial Polynomial::constant(int variables, const Rational& c) {
  Polynomial p(variables);
  p.add_term(Monomial(static_cast<std::size_t>(variables), 0), c);
  return p;
}

Polynomial Polynomial::variable(int variables, int index) {
  if (index < 0 || index >= variables) throw DomainError("variable index out of range");
  Polynomial p(variables);
  Monomial m(static_cast<std::size_t>(variables), 0);
  m[static_cast<std::size_t>(index)] = 1;
  p.add_term(m, Rational(1));
  return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != variables_) {
    throw DomainError("evaluation point has wrong arity");
  }
  Rational total(0);
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (int k = 0; k < m[i]; ++k) term *= point[i];
    }
    total += term;
  }
  return total;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      os << '*' << (i < names.size() ? names[i] : "x" + std::to_string(i));
      if (m[i] > 1) os << '^' << m[i];
    }
  }
  return os.str();
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.variables_ != variables_) throw DomainError("polynomial arity mismatch");
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.variables_ != variables_) throw DomainError("polynomial arity mismatch");
  for (const auto& [m, c] : rhs.terms_) add_term(m, Rational(-c));
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.variables_ != b.variables_) throw DomainError("polynomial arity mismatch");
  Polynomial out(a.variables_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Polynomial::Monomial m(ma);
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      out.add_term(m, Rational(ca * cb));
    }
  }
  return out;
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
}

RationalFunction RationalFunction::constant(int variables, const Rational& c) {
  return {Polynomial::constant(variables, c), Polynomial::constant(variables, 1)};
}

RationalFunction RationalFunction::variable(int variables, int index) {
  return {Polynomial::variable(variables, index), Polynomial::constant(variables, 1)};
}

Rational RationalFunction::evaluate(const std::vector<Rational>& point) const {
  Rational d = den_.evaluate(point);
  if (d == 0) throw DomainError("rational function pole at evaluation point");
  return num_.evaluate(point) / d;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.num_.is_zero()) throw DomainError("division by the zero rational function");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

bool identical(const RationalFunction& a, const RationalFunction& b) {
  return (a.numerator() * b.denominator() - b.numerator() * a.denominator()).is_zero();
}

}  // namespace wavelab
