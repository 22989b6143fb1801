#pragma once

#include <memory>
#include <vector>

#include "fanoreal/interval.hpp"

namespace fanoreal {

struct Monomial {
  Interval coeff;
  std::vector<int> exps;
};

/// Sparse multivariate polynomial with interval coefficients. Evaluation
/// uses a nested Horner scheme, one variable at a time in index order.
class MultiPolynomial {
 public:
  MultiPolynomial() = default;
  /// Throws InvalidInput on exponent vectors of the wrong length or
  /// negative exponents.
  MultiPolynomial(int nvars, std::vector<Monomial> terms);

  int nvars() const { return nvars_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  int total_degree() const;

  /// Enclosure of {p(x) : x in box}.
  Interval eval(const std::vector<Interval>& box) const;
  /// Naive term-by-term enclosure, for cross-checks.
  Interval eval_expanded(const std::vector<Interval>& box) const;

 private:
  struct Node {
    int var = -1;               // -1: constant leaf
    Interval constant;
    std::vector<int> exps;      // descending
    std::vector<Node> coeffs;   // coefficient polynomial of x_var^exps[k]
  };
  static Node build(const std::vector<const Monomial*>& terms, int var, int nvars);
  static Interval eval_node(const Node& node, const std::vector<Interval>& box);

  int nvars_ = 0;
  std::vector<Monomial> terms_;
  Node root_;
};

}  // namespace fanoreal
