#include "fanoreal/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace fanoreal {

using namespace rounding;

Interval Interval::enclose(const Rational& a, const Rational& b) {
  if (a > b) throw std::invalid_argument("interval bounds out of order");
  return {round_down(a), round_up(b)};
}

Interval Interval::parse(const std::string& a, const std::string& b) {
  return enclose(parse_rational(a), parse_rational(b));
}

Interval operator*(const Interval& a, const Interval& b) {
  if (a.lo == a.hi && b.lo == b.hi) return {mul_down(a.lo, b.lo), mul_up(a.lo, b.lo)};
  const double lo = std::min({mul_down(a.lo, b.lo), mul_down(a.lo, b.hi), mul_down(a.hi, b.lo), mul_down(a.hi, b.hi)});
  const double hi = std::max({mul_up(a.lo, b.lo), mul_up(a.lo, b.hi), mul_up(a.hi, b.lo), mul_up(a.hi, b.hi)});
  return {lo, hi};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("interval division by an interval containing zero");
  const double lo = std::min({div_down(a.lo, b.lo), div_down(a.lo, b.hi), div_down(a.hi, b.lo), div_down(a.hi, b.hi)});
  const double hi = std::max({div_up(a.lo, b.lo), div_up(a.lo, b.hi), div_up(a.hi, b.lo), div_up(a.hi, b.hi)});
  return {lo, hi};
}

Interval sqr(const Interval& x) {
  const double a = std::fabs(x.lo), b = std::fabs(x.hi);
  const double small = std::min(a, b), large = std::max(a, b);
  const double lo = x.contains_zero() ? 0.0 : mul_down(small, small);
  return {lo, mul_up(large, large)};
}

namespace {
// Bounds of the exact power of a single double.
Interval point_pow(double v, int n) {
  Interval acc(1.0);
  Interval base(v);
  while (n > 0) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return acc;
}
}  // namespace

Interval pow(const Interval& x, int n) {
  if (n < 0) throw std::invalid_argument("negative exponent");
  if (n == 0) return Interval(1.0);
  if (n == 1) return x;
  if (n == 2) return sqr(x);
  const Interval at_lo = point_pow(x.lo, n);
  const Interval at_hi = point_pow(x.hi, n);
  if (n % 2 == 1) return {at_lo.lo, at_hi.hi};
  if (x.contains_zero()) return {0.0, std::max(at_lo.hi, at_hi.hi)};
  if (x.lo > 0) return {at_lo.lo, at_hi.hi};
  return {at_hi.lo, at_lo.hi};
}

Interval sqrt(const Interval& x) {
  if (x.hi < 0) throw std::domain_error("square root of a negative interval");
  return {sqrt_down(std::max(x.lo, 0.0)), sqrt_up(x.hi)};
}

Interval hull(const Interval& a, const Interval& b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

}  // namespace fanoreal
