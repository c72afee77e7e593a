#include "wavelab/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>

#include "wavelab/error.hpp"

namespace wavelab {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw DomainError("not a rational number: '" + std::string(whole) + "'");
  }
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    exponent = parse_integer(s.substr(e + 1), whole).get_si();
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto int_part = s.substr(0, dot);
    auto frac_part = s.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty())) {
      throw DomainError("not a rational number: '" + std::string(whole) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) {
      throw DomainError("not a rational number: '" + std::string(whole) + "'");
    }
    digits = std::string(s);
  }
  mpz_class mantissa(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational r = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  if (s.empty()) throw DomainError("empty rational literal");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = parse_integer(trim(s.substr(0, slash)), text);
    auto den = parse_integer(trim(s.substr(slash + 1)), text);
    if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  return parse_decimal(s, text);
}

std::string to_string(const Rational& value) { return value.get_str(); }

double to_double(const Rational& value) { return value.get_d(); }

ExtRational ExtRational::infinity() {
  ExtRational x;
  x.infinite_ = true;
  return x;
}

ExtRational ExtRational::from_reciprocal(const Rational& reciprocal) {
  if (reciprocal == 0) return infinity();
  return ExtRational(Rational(1 / reciprocal));
}

ExtRational ExtRational::parse(std::string_view text) {
  auto s = trim(text);
  if (s == "inf" || s == "infinity" || s == "+inf" || s == "∞") {
    return infinity();
  }
  return ExtRational(parse_rational(s));
}

const Rational& ExtRational::value() const {
  if (infinite_) throw DomainError("infinite exponent has no finite value");
  return value_;
}

Rational ExtRational::reciprocal() const {
  if (infinite_) return Rational(0);
  if (value_ == 0) throw DomainError("reciprocal of zero exponent");
  return Rational(1 / value_);
}

double ExtRational::to_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_.get_d();
}

std::string ExtRational::to_string() const {
  return infinite_ ? std::string("inf") : value_.get_str();
}

bool operator==(const ExtRational& a, const ExtRational& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
  if (a.infinite_) return std::strong_ordering::greater;
  if (b.infinite_) return std::strong_ordering::less;
  int c = cmp(a.value_, b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const ExtRational& x) {
  return os << x.to_string();
}

}  // namespace wavelab
