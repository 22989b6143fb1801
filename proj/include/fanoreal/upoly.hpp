#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fanoreal/rational.hpp"

namespace fanoreal {

/// Dense univariate polynomial over Q, coefficients stored lowest degree
/// first. The zero polynomial has no coefficients and degree -1.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coefficients);

  static RationalPolynomial constant(const Rational& c);
  static RationalPolynomial monomial(const Rational& c, std::size_t degree);
  /// (t - root)
  static RationalPolynomial linear_factor(const Rational& root);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(std::size_t i) const;
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& t) const;
  int sign_at(const Rational& t) const { return sgn((*this)(t)); }

  RationalPolynomial derivative() const;
  RationalPolynomial monic() const;

  friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator*(const Rational& c, const RationalPolynomial& p);
  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Euclidean division; throws std::domain_error on a zero divisor.
  static void divide(const RationalPolynomial& a, const RationalPolynomial& b,
                     RationalPolynomial& quotient, RationalPolynomial& remainder);

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Monic gcd (zero if both are zero).
RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b);

/// True iff p has no repeated complex root (deg <= 0 counts as squarefree).
bool is_squarefree(const RationalPolynomial& p);

/// Sturm sequence p, p', -rem(...), ... for counting distinct real roots.
class SturmSequence {
 public:
  explicit SturmSequence(const RationalPolynomial& p);

  /// Sign variations at t, zeros dropped.
  int variations(const Rational& t) const;
  int variations_at_neg_infinity() const;
  int variations_at_pos_infinity() const;

  /// Number of distinct real roots in the half-open interval (a, b].
  int count(const Rational& a, const Rational& b) const {
    return variations(a) - variations(b);
  }
  int count_all() const { return variations_at_neg_infinity() - variations_at_pos_infinity(); }

  const RationalPolynomial& polynomial() const { return chain_.front(); }

 private:
  std::vector<RationalPolynomial> chain_;
};

/// A real root of a rational polynomial: either known exactly (lo == hi)
/// or isolated inside the open interval (lo, hi) containing no other root.
struct IsolatedRoot {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
  double approx() const;
};

/// Isolates all distinct real roots of p (p nonzero), sorted ascending,
/// with pairwise disjoint closed intervals. With snap_rational, every
/// rational root is returned as an exact point.
std::vector<IsolatedRoot> isolate_real_roots(const RationalPolynomial& p, bool snap_rational = false);

/// Shrinks an isolating interval until hi - lo <= width (exact roots untouched).
void refine_root(const SturmSequence& sturm, IsolatedRoot& root, const Rational& width);

}  // namespace fanoreal
