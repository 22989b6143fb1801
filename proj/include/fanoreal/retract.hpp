#pragma once

#include <array>

#include "fanoreal/interval.hpp"

namespace fanoreal {

// Points of R^6 in the order (a1, b1, a2, b2, a3, b3) on the real locus of
//   2 a1 = sqrt2 (a2^2 + b2^2),  2 a2 = sqrt2 (a3^2 + b3^2),  2 a3 = sqrt2 (a1^2 + b1^2).
using Point6 = std::array<double, 6>;
using Box6 = std::array<Interval, 6>;

/// Enclosure of sqrt(2).
Interval sqrt2_enclosure();

/// Enclosures of the three defining polynomials at a box.
std::array<Interval, 3> cyclic_residual(const Box6& p);

/// Enclosure of a point of the real locus with the given a-coordinates:
/// each b_j = sign * sqrt((2 a_i - sqrt2 a_j^2) / sqrt2), the sign taken
/// from the approximate b_j. Throws NegativeRadicand if some radicand is
/// below -tolerance.
Box6 variety_point(const Point6& approx, double tolerance = 1e-9);

/// Path from p (t = 0) to the origin (t = 1) inside the real locus:
///   a_j(t) = (1 - t) a_j,
///   b_j(t) = sign(b_j) sqrt(1 - t) sqrt((2 a_i - (1 - t) sqrt2 a_j^2) / sqrt2)
/// with (i, j) = (1, 2), (2, 3), (3, 1). Radicands in [-tolerance, 0) are
/// treated as 0; anything lower throws NegativeRadicand. t outside [0, 1]
/// throws InvalidInput.
Box6 retract_path(const Box6& p, double t, double tolerance = 1e-9);

/// Floating-point evaluation of the same path.
Point6 retract_path(const Point6& p, double t, double tolerance = 1e-9);

}  // namespace fanoreal
