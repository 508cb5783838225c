#include "flowtime/extended_rational.hpp"

#include <ostream>

namespace flowtime {

ExtendedRational ExtendedRational::operator-() const {
  if (is_plus_inf()) return minus_infinity();
  if (is_minus_inf()) return infinity();
  return ExtendedRational(-value_);
}

ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.is_finite() && b.is_finite()) return ExtendedRational(a.value_ + b.value_);
  if ((a.is_plus_inf() && b.is_minus_inf()) || (a.is_minus_inf() && b.is_plus_inf()))
    throw internal_error("adding opposite infinities");
  if (a.is_plus_inf() || b.is_plus_inf()) return ExtendedRational::infinity();
  return ExtendedRational::minus_infinity();
}

ExtendedRational operator-(const ExtendedRational& a, const ExtendedRational& b) {
  return a + (-b);
}

bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != ExtendedRational::Kind::Finite) return true;
  return a.value_ == b.value_;
}

bool operator<(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.is_minus_inf()) return !b.is_minus_inf();
  if (a.is_plus_inf()) return false;
  if (b.is_plus_inf()) return true;
  if (b.is_minus_inf()) return false;
  return a.value_ < b.value_;
}

std::string ExtendedRational::str() const {
  if (is_plus_inf()) return "inf";
  if (is_minus_inf()) return "-inf";
  return value_.str();
}

ExtendedRational min(const ExtendedRational& a, const ExtendedRational& b) {
  return a < b ? a : b;
}

ExtendedRational max(const ExtendedRational& a, const ExtendedRational& b) {
  return a < b ? b : a;
}

std::ostream& operator<<(std::ostream& os, const ExtendedRational& v) {
  return os << v.str();
}

}  // namespace flowtime
