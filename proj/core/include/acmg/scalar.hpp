#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>

#include "acmg/rational.hpp"

namespace acmg {

/// Uniform interface over the two arithmetic modes: floating point (with a
/// tolerance) and exact rationals (tolerance ignored, comparisons exact).
template <typename S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(std::int64_t n) { return static_cast<double>(n); }
  static double fraction(std::int64_t n, std::int64_t d) {
    return static_cast<double>(n) / static_cast<double>(d);
  }
  static double from_double(double x) { return x; }
  static double to_double(double x) { return x; }
  static double abs(double x) { return std::fabs(x); }
  static bool is_zero(double x, double eps) { return std::fabs(x) < eps; }
  static std::string str(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
  }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(std::int64_t n) { return Rational(n); }
  static Rational fraction(std::int64_t n, std::int64_t d) { return Rational(n, d); }
  static Rational from_double(double x) { return Rational::from_double(x); }
  static double to_double(const Rational& r) { return r.to_double(); }
  static Rational abs(const Rational& r) { return acmg::abs(r); }
  static bool is_zero(const Rational& r, double /*eps*/) { return r.num() == 0; }
  static std::string str(const Rational& r) { return r.str(); }
};

}  // namespace acmg
