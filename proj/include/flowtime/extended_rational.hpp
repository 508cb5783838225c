#ifndef FLOWTIME_EXTENDED_RATIONAL_HPP
#define FLOWTIME_EXTENDED_RATIONAL_HPP

#include <iosfwd>
#include <string>

#include "flowtime/errors.hpp"
#include "flowtime/rational.hpp"

namespace flowtime {

// Rational extended with infinities. Distances use only +inf ("unreachable");
// the piecewise-linear algebra additionally needs -inf for excluded terms.
// Infinities absorb addition and dominate comparison; +inf + -inf is a bug.
class ExtendedRational {
 public:
  ExtendedRational() : kind_(Kind::Finite), value_(0) {}
  ExtendedRational(Rational v) : kind_(Kind::Finite), value_(std::move(v)) {}  // NOLINT
  ExtendedRational(int v) : kind_(Kind::Finite), value_(v) {}                  // NOLINT

  static ExtendedRational infinity() { return ExtendedRational(Kind::PlusInf); }
  static ExtendedRational minus_infinity() { return ExtendedRational(Kind::MinusInf); }

  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_plus_inf() const { return kind_ == Kind::PlusInf; }
  bool is_minus_inf() const { return kind_ == Kind::MinusInf; }

  const Rational& finite() const {
    if (!is_finite()) throw internal_error("finite() on infinite value");
    return value_;
  }

  ExtendedRational operator-() const;
  friend ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b);
  friend ExtendedRational operator-(const ExtendedRational& a, const ExtendedRational& b);

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b);
  friend bool operator!=(const ExtendedRational& a, const ExtendedRational& b) {
    return !(a == b);
  }
  friend bool operator<(const ExtendedRational& a, const ExtendedRational& b);
  friend bool operator>(const ExtendedRational& a, const ExtendedRational& b) { return b < a; }
  friend bool operator<=(const ExtendedRational& a, const ExtendedRational& b) { return !(b < a); }
  friend bool operator>=(const ExtendedRational& a, const ExtendedRational& b) { return !(a < b); }

  std::string str() const;

 private:
  enum class Kind { Finite, PlusInf, MinusInf };
  explicit ExtendedRational(Kind k) : kind_(k), value_(0) {}

  Kind kind_;
  Rational value_;
};

ExtendedRational min(const ExtendedRational& a, const ExtendedRational& b);
ExtendedRational max(const ExtendedRational& a, const ExtendedRational& b);

std::ostream& operator<<(std::ostream& os, const ExtendedRational& v);

}  // namespace flowtime

#endif  // FLOWTIME_EXTENDED_RATIONAL_HPP
