#include "fanoreal/retract.hpp"

#include <cmath>
#include <string>

#include "fanoreal/error.hpp"

namespace fanoreal {

namespace {

// (b index, a_i index, a_j index) for each b_j: b2 pairs with a1, a2, etc.
struct Pairing {
  int b, ai, aj;
};
constexpr Pairing kPairings[3] = {{3, 0, 2}, {5, 2, 4}, {1, 4, 0}};

void check_t(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidInput("path parameter t must lie in [0, 1]");
}

Interval checked_sqrt(const Interval& radicand, double tolerance, int b) {
  if (radicand.hi < -tolerance)
    throw NegativeRadicand("radicand for b" + std::to_string(b / 2 + 1) + " is " + std::to_string(radicand.hi) +
                           " < 0: the point is not on the real locus");
  return sqrt(Interval(std::max(radicand.lo, 0.0), std::max(radicand.hi, 0.0)));
}

double sign_of(double b) { return b < 0 ? -1.0 : 1.0; }

}  // namespace

Interval sqrt2_enclosure() {
  static const Interval s = Interval::parse("1.4142135623730950488", "1.4142135623730950489");
  return s;
}

std::array<Interval, 3> cyclic_residual(const Box6& p) {
  const Interval r2 = sqrt2_enclosure();
  std::array<Interval, 3> out;
  for (int k = 0; k < 3; ++k) {
    const Pairing& q = kPairings[k];
    out[k] = Interval(2.0) * p[q.ai] - r2 * (sqr(p[q.aj]) + sqr(p[q.b]));
  }
  return out;
}

Box6 variety_point(const Point6& approx, double tolerance) {
  const Interval r2 = sqrt2_enclosure();
  Box6 out;
  for (int k = 0; k < 6; k += 2) out[k] = Interval(approx[k]);
  for (const Pairing& q : kPairings) {
    const Interval radicand = (Interval(2.0) * out[q.ai] - r2 * sqr(out[q.aj])) / r2;
    out[q.b] = Interval(sign_of(approx[q.b])) * checked_sqrt(radicand, tolerance, q.b);
  }
  return out;
}

Box6 retract_path(const Box6& p, double t, double tolerance) {
  check_t(t);
  const Interval r2 = sqrt2_enclosure();
  const Interval scale = Interval(rounding::add_down(1.0, -t), rounding::add_up(1.0, -t));
  Box6 out;
  for (int k = 0; k < 6; k += 2) out[k] = scale * p[k];
  for (const Pairing& q : kPairings) {
    const Interval radicand = (Interval(2.0) * p[q.ai] - scale * r2 * sqr(p[q.aj])) / r2;
    const Interval root = sqrt(scale) * checked_sqrt(radicand, tolerance, q.b);
    if (p[q.b].lo >= 0)
      out[q.b] = root;
    else if (p[q.b].hi <= 0)
      out[q.b] = -root;
    else
      out[q.b] = hull(-root, root);
  }
  return out;
}

Point6 retract_path(const Point6& p, double t, double tolerance) {
  check_t(t);
  constexpr double kSqrt2 = 1.4142135623730951;
  const double scale = 1.0 - t;
  Point6 out;
  for (int k = 0; k < 6; k += 2) out[k] = scale * p[k];
  for (const Pairing& q : kPairings) {
    double radicand = (2.0 * p[q.ai] - scale * kSqrt2 * p[q.aj] * p[q.aj]) / kSqrt2;
    if (radicand < -tolerance)
      throw NegativeRadicand("radicand for b" + std::to_string(q.b / 2 + 1) + " is " + std::to_string(radicand) +
                             " < 0: the point is not on the real locus");
    out[q.b] = sign_of(p[q.b]) * std::sqrt(scale) * std::sqrt(std::max(radicand, 0.0));
  }
  return out;
}

}  // namespace fanoreal
