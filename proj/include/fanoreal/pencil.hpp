#pragma once

#include <string>
#include <vector>

#include "fanoreal/rational.hpp"
#include "fanoreal/upoly.hpp"

namespace fanoreal {

/// Symmetric n x n matrix with exact rational entries (a quadratic form in
/// n variables).
class SymmetricForm {
 public:
  SymmetricForm() = default;
  /// Throws InvalidInput unless the matrix is square, symmetric and n >= 2.
  explicit SymmetricForm(std::vector<std::vector<Rational>> entries);

  static SymmetricForm diagonal(const std::vector<Rational>& d);
  static SymmetricForm identity(int n);
  static SymmetricForm zero(int n);

  int n() const { return static_cast<int>(entries_.size()); }
  const Rational& operator()(int i, int j) const { return entries_[i][j]; }
  const std::vector<std::vector<Rational>>& entries() const { return entries_; }

  /// a*this + b*other
  SymmetricForm combine(const Rational& a, const SymmetricForm& other, const Rational& b) const;
  /// A^T * this * A for a square matrix A of the same size.
  SymmetricForm congruence(const std::vector<std::vector<Rational>>& a) const;

  friend bool operator==(const SymmetricForm&, const SymmetricForm&) = default;

 private:
  std::vector<std::vector<Rational>> entries_;
};

struct QuadricPencil {
  SymmetricForm q0;
  SymmetricForm q1;

  /// Throws InvalidInput if the sizes differ.
  QuadricPencil(SymmetricForm a, SymmetricForm b);
  int n() const { return q0.n(); }
  /// Form at the point (l0 : l1) of the pencil: l0*q0 + l1*q1.
  SymmetricForm at(const Rational& l0, const Rational& l1) const { return q0.combine(l0, q1, l1); }
};

struct Inertia {
  int positive = 0;
  int zero = 0;
  int negative = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Exact signature by symmetric elimination over Q.
Inertia inertia(const SymmetricForm& m);

/// Exact determinant by Gaussian elimination over Q.
Rational determinant(const SymmetricForm& m);

/// Discriminant binary form det(l0*Q0 + l1*Q1) in the affine chart t = l1/l0.
struct DiscriminantForm {
  RationalPolynomial poly;      // det(Q0 + t*Q1)
  int infinity_multiplicity;    // n - deg(poly): order of vanishing at l0 = 0
  bool identically_zero() const { return poly.is_zero(); }
};

DiscriminantForm pencil_determinant(const QuadricPencil& p);

/// True iff the binary discriminant form is nonzero with only simple roots
/// over C, the point at infinity included.
bool validate_generic(const QuadricPencil& p);

struct PencilRoot {
  enum class Kind { Exact, Interval, Infinity };
  Kind kind = Kind::Exact;
  Rational lo;   // exact value for Kind::Exact
  Rational hi;
  int multiplicity = 1;

  double approx() const;
  std::string describe() const;
};

/// Real roots of the discriminant (distinct, ascending, infinity last), with
/// multiplicities. Rational roots are reported exactly.
std::vector<PencilRoot> discriminant_roots(const QuadricPencil& p);

/// The circle S^1 = {(cos a, sin a)} is traversed anticlockwise: the half
/// with l0 > 0 by increasing t = l1/l0, then the point (0, 1), the half with
/// l0 < 0 by increasing t, then (0, -1).
enum class Hemisphere { Positive, Negative };

struct Discontinuity {
  PencilRoot root;
  /// For a finite root, the half-circle containing the lift. For the point
  /// at infinity, Positive means (0, 1) and Negative means (0, -1).
  Hemisphere hemisphere = Hemisphere::Positive;
  int jump = 0;  // +1 or -1
};

struct Arc {
  int value = 0;         // I+ on the open arc
  Rational sample;       // rational t of one interior sample
  Hemisphere hemisphere = Hemisphere::Positive;
};

/// arcs[i] is followed anticlockwise by discontinuities[i], then arcs[i+1]
/// (circularly). With no discontinuities there is exactly one arc.
struct InertiaProfile {
  int n = 0;
  std::vector<Arc> arcs;
  std::vector<Discontinuity> discontinuities;
};

/// Throws NotGeneric if the discriminant vanishes identically or has a
/// multiple real root (infinity included); multiple non-real roots are
/// accepted. Throws InvariantViolation if a jump is not +-1 or the profile is
/// inconsistent.
InertiaProfile inertia_profile(const QuadricPencil& p);

struct IsotopyClass {
  std::vector<int> parts;  // canonical; empty denotes the class (0)
  int k() const;
  bool empty_class() const { return parts.empty(); }
  std::string to_string() const;
  friend bool operator==(const IsotopyClass&, const IsotopyClass&) = default;
};

/// Lexicographically least element among all rotations of the input and of
/// its reversal.
std::vector<int> canonical_necklace(const std::vector<int>& parts);

/// Lengths of the maximal circular runs of positive jumps, in anticlockwise
/// order (not canonicalized).
std::vector<int> positive_runs(const InertiaProfile& profile);

IsotopyClass classify(const InertiaProfile& profile);
IsotopyClass classify(const QuadricPencil& p);

enum class TopologyVerdict { Empty, TwoComponents, AtMostOneComponent };

std::string to_string(TopologyVerdict v);

/// Topology of the real locus of the intersection of two quadrics in P^5
/// implied by its class. Throws Unsupported unless n == 6.
TopologyVerdict interpret(const IsotopyClass& c, int n);

}  // namespace fanoreal
