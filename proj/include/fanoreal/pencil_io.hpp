#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fanoreal/pencil.hpp"

namespace fanoreal {

/// {"n": n, "q0": [[...]], "q1": [[...]]} with entries as "p/q" strings or
/// integers. Throws InvalidInput.
QuadricPencil parse_pencil(const std::string& json_text);
QuadricPencil load_pencil(const std::string& path);
std::string pencil_to_json(const QuadricPencil& p);

/// Result document of `pencil classify`. Throws NotGeneric like classify().
std::string classification_json(const QuadricPencil& p);

/// Deterministic generators for test data. Draws use the raw engine output
/// so sequences do not depend on the standard library implementation.
class PencilGenerator {
 public:
  explicit PencilGenerator(std::uint64_t seed) : rng_(seed) {}

  /// Integer in [lo, hi].
  long uniform(long lo, long hi);
  /// Nonzero p/q with |p| <= num, 1 <= q <= den.
  Rational nonzero_rational(long num, long den);

  /// Diagonal pencil with distinct finite roots -a_i/b_i.
  QuadricPencil diagonal(int n);
  /// Invertible n x n matrix with small rational entries.
  std::vector<std::vector<Rational>> invertible_matrix(int n);
  /// Invertible 2 x 2 rational matrix (a, b; c, d).
  std::vector<std::vector<Rational>> pencil_change();
  /// Random diagonal pencil transformed by a random congruence.
  QuadricPencil generic(int n);

 private:
  std::mt19937_64 rng_;
};

/// (a q0 + b q1, c q0 + d q1) for m = (a, b; c, d).
QuadricPencil change_coordinates(const QuadricPencil& p, const std::vector<std::vector<Rational>>& m);
/// (A^T q0 A, A^T q1 A).
QuadricPencil congruent(const QuadricPencil& p, const std::vector<std::vector<Rational>>& a);

}  // namespace fanoreal
