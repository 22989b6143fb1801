#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "fanoreal/rational.hpp"

namespace fanoreal {

// Outward-rounded interval over doubles. Rounding errors are recovered with
// error-free transformations under round-to-nearest (no mode switching);
// the translation unit must be compiled without FMA contraction.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr Interval() = default;
  constexpr Interval(double v) : lo(v), hi(v) {}  // NOLINT: implicit point interval
  constexpr Interval(double l, double h) : lo(l), hi(h) {}

  /// Tightest enclosure of an exact rational or of [a, b].
  static Interval enclose(const Rational& a, const Rational& b);
  static Interval enclose(const Rational& q) { return enclose(q, q); }
  /// Enclosure of [parse(a), parse(b)] for decimal or p/q strings.
  static Interval parse(const std::string& a, const std::string& b);

  double width() const { return hi - lo; }
  double mid() const { return lo + (hi - lo) / 2; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
  bool is_empty() const { return !(lo <= hi); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

namespace rounding {

inline double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

// Results below this magnitude may have inexact fma residuals.
inline constexpr double kTiny = 0x1p-960;

/// Lower/upper bounds of the exact a + b.
inline double add_down(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return s;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return err < 0 ? down(s) : s;
}
inline double add_up(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return s;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return err > 0 ? up(s) : s;
}

inline double mul_down(double a, double b) {
  const double p = a * b;
  if (!std::isfinite(p) || a == 0 || b == 0) return p;
  if (std::fabs(p) < kTiny) return down(p);
  return std::fma(a, b, -p) < 0 ? down(p) : p;
}
inline double mul_up(double a, double b) {
  const double p = a * b;
  if (!std::isfinite(p) || a == 0 || b == 0) return p;
  if (std::fabs(p) < kTiny) return up(p);
  return std::fma(a, b, -p) > 0 ? up(p) : p;
}

// For b != 0: a/b - q has the sign of (a - q*b) / b.
inline double div_down(double a, double b) {
  const double q = a / b;
  if (!std::isfinite(q) || a == 0) return q;
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return down(q);
  const double r = std::fma(-q, b, a);
  return (r < 0) != (b < 0) && r != 0 ? down(q) : q;
}
inline double div_up(double a, double b) {
  const double q = a / b;
  if (!std::isfinite(q) || a == 0) return q;
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return up(q);
  const double r = std::fma(-q, b, a);
  return (r > 0) != (b < 0) && r != 0 ? up(q) : q;
}

inline double sqrt_down(double a) {
  if (a <= 0) return 0.0;
  const double s = std::sqrt(a);
  if (a < kTiny) return down(s);
  return std::fma(-s, s, a) < 0 ? down(s) : s;
}
inline double sqrt_up(double a) {
  if (a <= 0) return 0.0;
  const double s = std::sqrt(a);
  if (a < kTiny) return up(s);
  return std::fma(-s, s, a) > 0 ? up(s) : s;
}

}  // namespace rounding

inline Interval operator+(const Interval& a, const Interval& b) {
  return {rounding::add_down(a.lo, b.lo), rounding::add_up(a.hi, b.hi)};
}
inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
inline Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

Interval operator*(const Interval& a, const Interval& b);
/// Throws std::domain_error if b contains zero.
Interval operator/(const Interval& a, const Interval& b);

/// Exact range of x^2 (tighter than x*x when x straddles 0).
Interval sqr(const Interval& x);
/// Exact range of x^n, n >= 0.
Interval pow(const Interval& x, int n);
/// Square root of the nonnegative part; throws std::domain_error if hi < 0.
Interval sqrt(const Interval& x);

/// Convex hull.
Interval hull(const Interval& a, const Interval& b);

}  // namespace fanoreal
