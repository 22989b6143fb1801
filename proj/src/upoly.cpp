#include "fanoreal/upoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fanoreal {

RationalPolynomial::RationalPolynomial(std::vector<Rational> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

RationalPolynomial RationalPolynomial::constant(const Rational& c) {
  return RationalPolynomial(std::vector<Rational>{c});
}

RationalPolynomial RationalPolynomial::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return RationalPolynomial(std::move(v));
}

RationalPolynomial RationalPolynomial::linear_factor(const Rational& root) {
  return RationalPolynomial(std::vector<Rational>{Rational(-root), Rational(1)});
}

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPolynomial::coefficient(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : Rational(0);
}

Rational RationalPolynomial::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

RationalPolynomial RationalPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return RationalPolynomial(std::move(d));
}

RationalPolynomial RationalPolynomial::monic() const {
  if (is_zero()) return {};
  Rational lead = leading();
  std::vector<Rational> v(coeffs_);
  for (auto& c : v) c /= lead;
  return RationalPolynomial(std::move(v));
}

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
  std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return RationalPolynomial(std::move(v));
}

RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
  return a + Rational(-1) * b;
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return RationalPolynomial(std::move(v));
}

RationalPolynomial operator*(const Rational& c, const RationalPolynomial& p) {
  std::vector<Rational> v(p.coeffs_);
  for (auto& x : v) x *= c;
  return RationalPolynomial(std::move(v));
}

void RationalPolynomial::divide(const RationalPolynomial& a, const RationalPolynomial& b,
                                RationalPolynomial& quotient, RationalPolynomial& remainder) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem(a.coeffs_);
  const int db = b.degree();
  if (a.degree() < db) {
    quotient = {};
    remainder = a;
    return;
  }
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  for (int k = a.degree(); k >= db; --k) {
    const Rational c = rem[static_cast<std::size_t>(k)] / b.leading();
    if (c == 0) continue;
    quot[static_cast<std::size_t>(k - db)] = c;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k - db + j)] -= c * b.coeffs_[static_cast<std::size_t>(j)];
  }
  quotient = RationalPolynomial(std::move(quot));
  remainder = RationalPolynomial(std::move(rem));
}

std::string RationalPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    Rational mag = abs(c);
    out << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (k == 0 || mag != 1) out << fanoreal::to_string(mag);
    if (k >= 1) out << (k == 0 || mag != 1 ? "*" : "") << var;
    if (k >= 2) out << "^" << k;
    first = false;
  }
  return out.str();
}

RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b) {
  while (!b.is_zero()) {
    RationalPolynomial q, r;
    RationalPolynomial::divide(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

bool is_squarefree(const RationalPolynomial& p) {
  if (p.degree() <= 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

SturmSequence::SturmSequence(const RationalPolynomial& p) {
  if (p.is_zero()) throw std::domain_error("Sturm sequence of the zero polynomial");
  chain_.push_back(p);
  RationalPolynomial next = p.derivative();
  while (!next.is_zero()) {
    chain_.push_back(next);
    RationalPolynomial q, r;
    RationalPolynomial::divide(chain_[chain_.size() - 2], chain_.back(), q, r);
    next = Rational(-1) * r;
  }
}

namespace {
int count_variations(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}
}  // namespace

int SturmSequence::variations(const Rational& t) const {
  std::vector<int> signs;
  signs.reserve(chain_.size());
  for (const auto& p : chain_) signs.push_back(p.sign_at(t));
  return count_variations(signs);
}

int SturmSequence::variations_at_pos_infinity() const {
  std::vector<int> signs;
  for (const auto& p : chain_) signs.push_back(sgn(p.leading()));
  return count_variations(signs);
}

int SturmSequence::variations_at_neg_infinity() const {
  std::vector<int> signs;
  for (const auto& p : chain_) {
    int s = sgn(p.leading());
    signs.push_back(p.degree() % 2 == 0 ? s : -s);
  }
  return count_variations(signs);
}

double IsolatedRoot::approx() const {
  Rational mid = (lo + hi) / 2;
  return mid.get_d();
}

namespace {

// Cauchy bound: every root satisfies |t| < 1 + max |a_i / a_n|.
Rational root_bound(const RationalPolynomial& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs(p.coefficient(static_cast<std::size_t>(i)) / p.leading());
    if (r > m) m = r;
  }
  return m + 1;
}

void isolate(const SturmSequence& s, const Rational& a, const Rational& b, int count,
             std::vector<IsolatedRoot>& out) {
  // Invariant: exactly `count` distinct roots in (a, b].
  if (count == 0) return;
  const RationalPolynomial& p = s.polynomial();
  if (count == 1) {
    if (p.sign_at(b) == 0)
      out.push_back({b, b});
    else
      out.push_back({a, b});
    return;
  }
  Rational mid = (a + b) / 2;
  int left = s.count(a, mid);
  isolate(s, a, mid, left, out);
  isolate(s, mid, b, count - left, out);
}

}  // namespace

void refine_root(const SturmSequence& sturm, IsolatedRoot& root, const Rational& width) {
  const RationalPolynomial& p = sturm.polynomial();
  while (!root.exact() && root.hi - root.lo > width) {
    Rational mid = (root.lo + root.hi) / 2;
    if (p.sign_at(mid) == 0) {
      root.lo = root.hi = mid;
    } else if (sturm.count(root.lo, mid) == 1) {
      root.hi = mid;
    } else {
      root.lo = mid;
    }
  }
}

std::vector<IsolatedRoot> isolate_real_roots(const RationalPolynomial& p, bool snap_rational) {
  if (p.is_zero()) throw std::domain_error("root isolation of the zero polynomial");
  std::vector<IsolatedRoot> roots;
  if (p.degree() == 0) return roots;
  SturmSequence sturm(p);
  Rational bound = root_bound(p);
  isolate(sturm, -bound, bound, sturm.count(-bound, bound), roots);

  // Rational roots of the integer-scaled polynomial have the form k / L with
  // L the scaled leading coefficient; once an interval is narrower than 1 / L
  // at most one such candidate remains.
  Integer denom_lcm = 1;
  for (const auto& c : p.coefficients()) mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), c.get_den_mpz_t());
  Integer lead = abs(Rational(p.leading() * denom_lcm).get_num());
  const Rational grid(1, lead);
  for (auto& r : roots) {
    if (!snap_rational || r.exact()) continue;
    refine_root(sturm, r, grid / 2);
    if (r.exact()) continue;
    Integer k;
    Rational scaled = r.hi * lead;
    mpz_fdiv_q(k.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    Rational candidate(k, lead);
    candidate.canonicalize();
    if (candidate > r.lo && candidate < r.hi && p.sign_at(candidate) == 0) r.lo = r.hi = candidate;
  }

  // Separate closures: a neighbour's endpoint may coincide with an exact root
  // or with another interval's endpoint.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
      if (roots[i].hi < roots[i + 1].lo) continue;
      changed = true;
      IsolatedRoot& target = roots[i].exact() ? roots[i + 1] : roots[i];
      refine_root(sturm, target, (target.hi - target.lo) / 2);
    }
  }
  return roots;
}

}  // namespace fanoreal
