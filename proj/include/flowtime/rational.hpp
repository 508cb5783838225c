#ifndef FLOWTIME_RATIONAL_HPP
#define FLOWTIME_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <iosfwd>
#include <string>

namespace flowtime {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number, always in lowest terms with positive denominator.
// Backed by boost::multiprecision so intermediate values never overflow.
class Rational {
 public:
  Rational() : value_(0) {}
  Rational(int n) : value_(n) {}            // NOLINT: implicit by design
  Rational(long n) : value_(n) {}           // NOLINT
  Rational(long long n) : value_(n) {}      // NOLINT
  explicit Rational(const BigInt& n) : value_(n) {}
  Rational(const BigInt& num, const BigInt& den);

  static Rational parse(const std::string& text);  // "p/q" or "p"

  const BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  const BigInt denominator() const { return boost::multiprecision::denominator(value_); }
  bool is_integer() const { return denominator() == 1; }
  bool is_zero() const { return value_.is_zero(); }
  int sign() const { return value_.sign(); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return a.value_ != b.value_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.value_ < b.value_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  // Largest integer <= value, as a BigInt.
  BigInt floor() const;
  BigInt ceil() const;

  std::string str() const;  // "p/q", or "p" when integral
  double to_double() const;

 private:
  boost::multiprecision::cpp_rational value_;
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);
Rational abs(const Rational& a);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace flowtime

#endif  // FLOWTIME_RATIONAL_HPP
