#include "fanoreal/pencil.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <sstream>

#include "fanoreal/error.hpp"

namespace fanoreal {

using Matrix = std::vector<std::vector<Rational>>;

SymmetricForm::SymmetricForm(Matrix entries) : entries_(std::move(entries)) {
  const std::size_t n = entries_.size();
  if (n < 2) throw InvalidInput("symmetric form needs n >= 2");
  for (const auto& row : entries_)
    if (row.size() != n) throw InvalidInput("symmetric form must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (entries_[i][j] != entries_[j][i]) throw InvalidInput("matrix is not symmetric");
}

SymmetricForm SymmetricForm::diagonal(const std::vector<Rational>& d) {
  Matrix m(d.size(), std::vector<Rational>(d.size(), Rational(0)));
  for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
  return SymmetricForm(std::move(m));
}

SymmetricForm SymmetricForm::identity(int n) {
  return diagonal(std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)));
}

SymmetricForm SymmetricForm::zero(int n) {
  return diagonal(std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
}

SymmetricForm SymmetricForm::combine(const Rational& a, const SymmetricForm& other, const Rational& b) const {
  Matrix m = entries_;
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j) m[i][j] = a * entries_[i][j] + b * other.entries_[i][j];
  return SymmetricForm(std::move(m));
}

SymmetricForm SymmetricForm::congruence(const Matrix& a) const {
  const int size = n();
  if (static_cast<int>(a.size()) != size) throw InvalidInput("congruence matrix size mismatch");
  Matrix qa(size, std::vector<Rational>(size, Rational(0)));
  for (int i = 0; i < size; ++i)
    for (int k = 0; k < size; ++k) {
      if (entries_[i][k] == 0) continue;
      for (int j = 0; j < size; ++j) qa[i][j] += entries_[i][k] * a[k][j];
    }
  Matrix out(size, std::vector<Rational>(size, Rational(0)));
  for (int k = 0; k < size; ++k)
    for (int i = 0; i < size; ++i) {
      if (a[k][i] == 0) continue;
      for (int j = 0; j < size; ++j) out[i][j] += a[k][i] * qa[k][j];
    }
  return SymmetricForm(std::move(out));
}

QuadricPencil::QuadricPencil(SymmetricForm a, SymmetricForm b) : q0(std::move(a)), q1(std::move(b)) {
  if (q0.n() != q1.n()) throw InvalidInput("pencil forms have different sizes");
}

Inertia inertia(const SymmetricForm& form) {
  Matrix a = form.entries();
  Inertia result;
  std::vector<int> alive(static_cast<std::size_t>(form.n()));
  for (int i = 0; i < form.n(); ++i) alive[static_cast<std::size_t>(i)] = i;

  auto eliminate = [&](const std::vector<int>& pivots) {
    // Schur complement of the pivot block, 1x1 or 2x2.
    std::vector<int> rest;
    for (int i : alive)
      if (std::find(pivots.begin(), pivots.end(), i) == pivots.end()) rest.push_back(i);
    if (pivots.size() == 1) {
      const int p = pivots[0];
      for (int i : rest) {
        if (a[i][p] == 0) continue;
        const Rational f = a[i][p] / a[p][p];
        for (int j : rest) a[i][j] -= f * a[p][j];
      }
    } else {
      // Block [[0, c], [c, 0]] has inverse [[0, 1/c], [1/c, 0]].
      const int p = pivots[0], q = pivots[1];
      const Rational inv = 1 / a[p][q];
      for (int i : rest)
        for (int j : rest) a[i][j] -= (a[i][p] * a[q][j] + a[i][q] * a[p][j]) * inv;
    }
    alive = std::move(rest);
  };

  while (!alive.empty()) {
    auto diag = std::find_if(alive.begin(), alive.end(), [&](int i) { return a[i][i] != 0; });
    if (diag != alive.end()) {
      const int p = *diag;
      (sgn(a[p][p]) > 0 ? result.positive : result.negative) += 1;
      eliminate({p});
      continue;
    }
    int p = -1, q = -1;
    for (std::size_t x = 0; x < alive.size() && p < 0; ++x)
      for (std::size_t y = x + 1; y < alive.size(); ++y)
        if (a[alive[x]][alive[y]] != 0) {
          p = alive[x];
          q = alive[y];
          break;
        }
    if (p < 0) {
      result.zero += static_cast<int>(alive.size());
      break;
    }
    result.positive += 1;
    result.negative += 1;
    eliminate({p, q});
  }
  return result;
}

Rational determinant(const SymmetricForm& form) {
  Matrix a = form.entries();
  const int n = form.n();
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    while (pivot < n && a[pivot][c] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      std::swap(a[pivot], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (int j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

DiscriminantForm pencil_determinant(const QuadricPencil& p) {
  // det(Q0 + t Q1) has degree <= n; interpolate exactly at t = 0..n
  // (Newton divided differences).
  const int n = p.n();
  std::vector<Rational> xs, coef;
  for (int i = 0; i <= n; ++i) {
    xs.emplace_back(i);
    coef.push_back(determinant(p.at(1, xs.back())));
  }
  for (int level = 1; level <= n; ++level)
    for (int i = n; i >= level; --i)
      coef[static_cast<std::size_t>(i)] =
          (coef[static_cast<std::size_t>(i)] - coef[static_cast<std::size_t>(i - 1)]) /
          (xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(i - level)]);
  RationalPolynomial poly = RationalPolynomial::constant(coef[static_cast<std::size_t>(n)]);
  for (int i = n - 1; i >= 0; --i)
    poly = poly * RationalPolynomial::linear_factor(xs[static_cast<std::size_t>(i)]) +
           RationalPolynomial::constant(coef[static_cast<std::size_t>(i)]);
  DiscriminantForm out{poly, poly.is_zero() ? n : n - poly.degree()};
  return out;
}

bool validate_generic(const QuadricPencil& p) {
  const DiscriminantForm d = pencil_determinant(p);
  if (d.identically_zero() || d.infinity_multiplicity > 1) return false;
  return is_squarefree(d.poly);
}

double PencilRoot::approx() const {
  if (kind == Kind::Infinity) return std::numeric_limits<double>::infinity();
  return Rational((lo + hi) / 2).get_d();
}

std::string PencilRoot::describe() const {
  switch (kind) {
    case Kind::Exact: return to_string(lo);
    case Kind::Interval: return "(" + to_string(lo) + ", " + to_string(hi) + ")";
    case Kind::Infinity: return "inf";
  }
  return {};
}

namespace {

RationalPolynomial squarefree_part(const RationalPolynomial& f) {
  if (f.degree() <= 0) return f;
  RationalPolynomial q, r;
  RationalPolynomial::divide(f, gcd(f, f.derivative()), q, r);
  return q;
}

bool shares_root(const RationalPolynomial& g, const IsolatedRoot& root) {
  if (g.degree() <= 0) return false;
  if (root.exact()) return g.sign_at(root.lo) == 0;
  return SturmSequence(g).count(root.lo, root.hi) > 0;
}

PencilRoot finite_root(const IsolatedRoot& r, int multiplicity) {
  PencilRoot out;
  out.kind = r.exact() ? PencilRoot::Kind::Exact : PencilRoot::Kind::Interval;
  out.lo = r.lo;
  out.hi = r.hi;
  out.multiplicity = multiplicity;
  return out;
}

}  // namespace

std::vector<PencilRoot> discriminant_roots(const QuadricPencil& p) {
  const DiscriminantForm d = pencil_determinant(p);
  std::vector<PencilRoot> out;
  if (d.identically_zero()) return out;
  // Multiplicity via the chain f, gcd(f, f'), gcd of that with its derivative, ...
  std::vector<RationalPolynomial> chain{d.poly};
  while (chain.back().degree() > 0) chain.push_back(gcd(chain.back(), chain.back().derivative()));
  for (const IsolatedRoot& r : isolate_real_roots(squarefree_part(d.poly), true)) {
    int mult = 1;
    while (mult < static_cast<int>(chain.size()) && shares_root(squarefree_part(chain[mult]), r)) ++mult;
    out.push_back(finite_root(r, mult));
  }
  if (d.infinity_multiplicity > 0) {
    PencilRoot inf;
    inf.kind = PencilRoot::Kind::Infinity;
    inf.multiplicity = d.infinity_multiplicity;
    out.push_back(inf);
  }
  return out;
}

namespace {

struct Piece {
  Hemisphere hemisphere;
  Rational sample;
  int value;
};

// Sample t-values for the open segments cut out by disjoint isolated roots.
std::vector<Rational> segment_samples(const std::vector<IsolatedRoot>& roots) {
  std::vector<Rational> s;
  if (roots.empty()) return {Rational(0)};
  s.push_back(roots.front().lo - 1);
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) s.push_back((roots[i].hi + roots[i + 1].lo) / 2);
  s.push_back(roots.back().hi + 1);
  return s;
}

}  // namespace

InertiaProfile inertia_profile(const QuadricPencil& p) {
  const DiscriminantForm d = pencil_determinant(p);
  if (d.identically_zero()) throw NotGeneric("discriminant vanishes identically");
  if (d.infinity_multiplicity > 1) throw NotGeneric("multiple discriminant root at infinity");
  // Only real degeneration points matter for I+; multiple non-real roots
  // leave the form nondegenerate on the whole circle.
  const RationalPolynomial repeated = gcd(d.poly, d.poly.derivative());
  if (repeated.degree() > 0 && SturmSequence(repeated).count_all() > 0)
    throw NotGeneric("discriminant has a multiple real root");

  const int n = p.n();
  const std::vector<IsolatedRoot> roots = isolate_real_roots(squarefree_part(d.poly));
  const std::vector<Rational> samples = segment_samples(roots);
  const bool at_infinity = d.infinity_multiplicity == 1;

  // Values on the upper half-circle (l0 > 0); the lower half sees -Q, so
  // I+ there is I-(Q0 + t Q1) = n - I+ at a nondegenerate sample.
  std::vector<int> upper;
  for (const Rational& t : samples) {
    Inertia in = inertia(p.at(1, t));
    if (in.zero != 0) throw InvariantViolation("degenerate form at an arc sample");
    upper.push_back(in.positive);
  }

  // Circular sequence: pieces and the boundary point after each piece.
  std::vector<Piece> pieces;
  std::vector<std::optional<PencilRoot>> after;
  for (Hemisphere h : {Hemisphere::Positive, Hemisphere::Negative}) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const int v = h == Hemisphere::Positive ? upper[i] : n - upper[i];
      pieces.push_back({h, samples[i], v});
      if (i < roots.size()) {
        after.push_back(finite_root(roots[i], 1));
      } else if (at_infinity) {
        PencilRoot inf;
        inf.kind = PencilRoot::Kind::Infinity;
        after.push_back(inf);
      } else {
        after.push_back(std::nullopt);
      }
    }
  }

  InertiaProfile profile;
  profile.n = n;
  // Start the walk right after a discontinuity so that merged arcs do not
  // wrap around the end of the list.
  std::size_t start = 0;
  for (std::size_t i = 0; i < after.size(); ++i)
    if (after[i]) {
      start = (i + 1) % after.size();
      break;
    }
  const std::size_t count = pieces.size();
  bool open_arc = false;
  for (std::size_t step = 0; step < count; ++step) {
    const std::size_t i = (start + step) % count;
    const std::size_t next = (i + 1) % count;
    if (!open_arc) {
      profile.arcs.push_back({pieces[i].value, pieces[i].sample, pieces[i].hemisphere});
      open_arc = true;
    }
    if (after[i]) {
      Discontinuity disc;
      disc.root = *after[i];
      disc.hemisphere = pieces[i].hemisphere;
      disc.jump = pieces[next].value - pieces[i].value;
      if (disc.jump != 1 && disc.jump != -1)
        throw InvariantViolation("inertia jump of height " + std::to_string(disc.jump));
      profile.discontinuities.push_back(disc);
      open_arc = false;
    } else if (pieces[next].value != pieces[i].value) {
      throw InvariantViolation("inertia changes away from a discriminant root");
    }
  }
  int balance = 0;
  for (const auto& disc : profile.discontinuities) balance += disc.jump;
  if (balance != 0) throw InvariantViolation("unbalanced inertia jumps");
  const std::size_t half = profile.discontinuities.size() / 2;
  for (std::size_t i = 0; i < half; ++i)
    if (profile.discontinuities[i].jump != -profile.discontinuities[i + half].jump)
      throw InvariantViolation("antipodal jumps do not have opposite signs");
  return profile;
}

int IsotopyClass::k() const {
  int s = 0;
  for (int x : parts) s += x;
  return s;
}

std::string IsotopyClass::to_string() const {
  if (parts.empty()) return "(0)";
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? "," : "") << parts[i];
  out << ")";
  return out.str();
}

std::vector<int> canonical_necklace(const std::vector<int>& parts) {
  std::vector<int> best = parts;
  std::vector<int> candidate = parts;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t r = 0; r < candidate.size(); ++r) {
      std::rotate(candidate.begin(), candidate.begin() + 1, candidate.end());
      if (candidate < best) best = candidate;
    }
    std::reverse(candidate.begin(), candidate.end());
  }
  return best;
}

std::vector<int> positive_runs(const InertiaProfile& profile) {
  const auto& d = profile.discontinuities;
  std::vector<int> runs;
  const auto neg = std::find_if(d.begin(), d.end(), [](const Discontinuity& x) { return x.jump < 0; });
  if (neg == d.end()) return runs;
  // Walk once around the circle starting after a negative jump.
  const std::size_t start = static_cast<std::size_t>(neg - d.begin()) + 1;
  int current = 0;
  for (std::size_t step = 0; step < d.size(); ++step) {
    const Discontinuity& x = d[(start + step) % d.size()];
    if (x.jump > 0) {
      ++current;
    } else if (current > 0) {
      runs.push_back(current);
      current = 0;
    }
  }
  if (current > 0) runs.push_back(current);
  return runs;
}

IsotopyClass classify(const InertiaProfile& profile) {
  IsotopyClass c;
  const std::vector<int> runs = positive_runs(profile);
  if (!runs.empty()) c.parts = canonical_necklace(runs);
  if (profile.n == 6 && !c.parts.empty()) {
    if (c.k() % 2 != 0) throw InvariantViolation("odd number of positive jumps: k = " + std::to_string(c.k()));
    if (c.parts.size() % 2 == 0) throw InvariantViolation("even number of parts in " + c.to_string());
  }
  return c;
}

IsotopyClass classify(const QuadricPencil& p) { return classify(inertia_profile(p)); }

std::string to_string(TopologyVerdict v) {
  switch (v) {
    case TopologyVerdict::Empty: return "Empty";
    case TopologyVerdict::TwoComponents: return "TwoComponents";
    case TopologyVerdict::AtMostOneComponent: return "AtMostOneComponent";
  }
  return {};
}

TopologyVerdict interpret(const IsotopyClass& c, int n) {
  if (n != 6) throw Unsupported("topology verdict is only defined for n = 6, got n = " + std::to_string(n));
  if (c.empty_class()) return TopologyVerdict::Empty;
  if (c.parts == std::vector<int>{1, 1, 4}) return TopologyVerdict::TwoComponents;
  return TopologyVerdict::AtMostOneComponent;
}

}  // namespace fanoreal
