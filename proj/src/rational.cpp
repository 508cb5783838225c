#include "flowtime/rational.hpp"

#include <cctype>
#include <ostream>

#include "flowtime/errors.hpp"

namespace flowtime {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den.is_zero()) throw input_error("rational with zero denominator");
  value_ = boost::multiprecision::cpp_rational(num, den);
}

namespace {

BigInt parse_integer(const std::string& text, size_t lo, size_t hi) {
  if (lo >= hi) throw input_error("empty integer in rational: '" + text + "'");
  size_t i = lo;
  bool negative = false;
  if (text[i] == '-' || text[i] == '+') {
    negative = text[i] == '-';
    ++i;
  }
  if (i >= hi) throw input_error("malformed integer in rational: '" + text + "'");
  BigInt value = 0;
  for (; i < hi; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw input_error("malformed rational literal: '" + text + "'");
    value = value * 10 + (text[i] - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  size_t slash = text.find('/');
  if (slash == std::string::npos) {
    return Rational(parse_integer(text, 0, text.size()));
  }
  BigInt num = parse_integer(text, 0, slash);
  BigInt den = parse_integer(text, slash + 1, text.size());
  if (den <= 0) throw input_error("rational denominator must be positive: '" + text + "'");
  return Rational(num, den);
}

Rational Rational::operator-() const {
  Rational r;
  r.value_ = -value_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw input_error("division of rational by zero");
  value_ /= o.value_;
  return *this;
}

BigInt Rational::floor() const {
  BigInt num = numerator();
  BigInt den = denominator();
  BigInt q = num / den;
  if (num < 0 && q * den != num) --q;
  return q;
}

BigInt Rational::ceil() const {
  return -Rational(-*this).floor();
}

std::string Rational::str() const {
  if (is_integer()) return numerator().str();
  return numerator().str() + "/" + denominator().str();
}

double Rational::to_double() const { return value_.convert_to<double>(); }

Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace flowtime
