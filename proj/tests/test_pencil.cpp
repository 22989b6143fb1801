#include <doctest.h>

#include "fanoreal/error.hpp"
#include "fanoreal/pencil.hpp"
#include "fanoreal/pencil_io.hpp"
#include "oracles.hpp"

using namespace fanoreal;

namespace {

QuadricPencil distinct_diagonal() {
  return {SymmetricForm::diagonal({1, 1, 1, 1, 1, -1}), SymmetricForm::diagonal({2, 3, 4, 5, Rational(1, 4), -1})};
}

QuadricPencil e2_pencil() {
  return {SymmetricForm::diagonal({1, 1, 1, 1, 1, -1}),
          SymmetricForm::diagonal({2, Rational(9, 4), Rational(5, 2), Rational(11, 4), Rational(1, 4), -1})};
}

SymmetricForm blocks(Rational a, Rational b, Rational c) {
  std::vector<std::vector<Rational>> m(6, std::vector<Rational>(6));
  for (int k = 0; k < 3; ++k) {
    m[2 * k][2 * k] = a;
    m[2 * k][2 * k + 1] = m[2 * k + 1][2 * k] = b;
    m[2 * k + 1][2 * k + 1] = c;
  }
  return SymmetricForm(m);
}

QuadricPencil block_pencil() { return {blocks(1, 0, -1), blocks(0, 1, 0)}; }

RationalPolynomial lin(Rational c0, Rational c1) { return RationalPolynomial({c0, c1}); }

}  // namespace

TEST_CASE("symmetric form validation") {
  CHECK_THROWS_AS(SymmetricForm({{1, 2}, {3, 4}}), InvalidInput);
  CHECK_THROWS_AS(SymmetricForm(std::vector<std::vector<Rational>>{{1}}), InvalidInput);
  CHECK_THROWS_AS(SymmetricForm({{1, 0}, {0}}), InvalidInput);
  CHECK_THROWS_AS(QuadricPencil(SymmetricForm::identity(2), SymmetricForm::identity(3)), InvalidInput);
}

TEST_CASE("pencil determinant") {
  SUBCASE("diagonal pencil is the product of its entries") {
    const auto d = pencil_determinant(distinct_diagonal());
    const auto expected = lin(1, 2) * lin(1, 3) * lin(1, 4) * lin(1, 5) * lin(1, Rational(1, 4)) * lin(-1, -1);
    CHECK(d.poly == expected);
    CHECK(d.infinity_multiplicity == 0);
  }
  SUBCASE("zero second form puts the whole degree at infinity") {
    const auto d = pencil_determinant({SymmetricForm::identity(2), SymmetricForm::zero(2)});
    CHECK(d.poly == RationalPolynomial::constant(1));
    CHECK(d.infinity_multiplicity == 2);
  }
  SUBCASE("block pencil") {
    const RationalPolynomial f({-1, 0, -1});
    CHECK(pencil_determinant(block_pencil()).poly == f * f * f);  // -(1 + t^2)^3
  }
  SUBCASE("agrees with determinants at sample points") {
    PencilGenerator gen(5);
    for (int i = 0; i < 5; ++i) {
      const auto p = gen.generic(5);
      const auto d = pencil_determinant(p);
      for (int k = -3; k <= 3; ++k) {
        const Rational t(k, 7);
        CHECK(d.poly(t) == oracle::bareiss_determinant(p.at(1, t)));
      }
    }
  }
}

TEST_CASE("validate_generic") {
  CHECK(validate_generic(distinct_diagonal()));
  const auto q0 = SymmetricForm::diagonal({1, 1, 1, 1, 1, -1});
  CHECK_FALSE(validate_generic({q0, q0.combine(2, q0, 0)}));
  // Four equal middle coefficients give a fourfold root.
  const auto equal = SymmetricForm::diagonal({2, Rational(9, 4), Rational(9, 4), Rational(9, 4), Rational(9, 4), -1});
  CHECK_FALSE(validate_generic({q0, equal}));
  CHECK_FALSE(validate_generic(block_pencil()));
}

TEST_CASE("inertia") {
  CHECK(inertia(SymmetricForm::identity(6)) == Inertia{6, 0, 0});
  CHECK(inertia(SymmetricForm::diagonal({2, 3, 4, 5, Rational(1, 4), -1})) == Inertia{5, 0, 1});
  const auto p = distinct_diagonal();
  CHECK(inertia(p.at(1, Rational(-1, 5))) == Inertia{4, 1, 1});
  CHECK(inertia(p.at(1, Rational(-2, 5))) == Inertia{2, 0, 4});
  // Zero diagonal needs a 2x2 pivot.
  CHECK(inertia(SymmetricForm({{0, 1}, {1, 0}})) == Inertia{1, 0, 1});
  CHECK(inertia(SymmetricForm({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}})) == Inertia{1, 1, 1});
  CHECK(inertia(SymmetricForm::zero(3)) == Inertia{0, 3, 0});
}

TEST_CASE("inertia agrees with the Jacobi oracle") {
  PencilGenerator gen(99);
  for (int i = 0; i < 200; ++i) {
    const auto p = gen.generic(6);
    const auto m = p.at(gen.nonzero_rational(5, 3), gen.nonzero_rational(5, 3));
    const auto neg = oracle::jacobi_negatives(m);
    if (!neg) continue;
    const auto in = inertia(m);
    CHECK(in.zero == 0);
    CHECK(in.negative == *neg);
  }
}

TEST_CASE("determinant agrees with Bareiss") {
  PencilGenerator gen(3);
  for (int i = 0; i < 50; ++i) {
    const auto p = gen.generic(4);
    const auto m = p.at(1, gen.nonzero_rational(4, 4));
    CHECK(determinant(m) == oracle::bareiss_determinant(m));
  }
}

TEST_CASE("discriminant roots") {
  const auto roots = discriminant_roots(e2_pencil());
  std::vector<Rational> expected = {-4, -1, Rational(-1, 2), Rational(-4, 9), Rational(-2, 5), Rational(-4, 11)};
  REQUIRE(roots.size() == expected.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    CHECK(roots[i].kind == PencilRoot::Kind::Exact);
    CHECK(roots[i].lo == expected[i]);
    CHECK(roots[i].multiplicity == 1);
  }
  const auto inf = discriminant_roots({SymmetricForm::identity(3), SymmetricForm::diagonal({1, 2, 0})});
  REQUIRE(inf.size() == 3);
  CHECK(inf.back().kind == PencilRoot::Kind::Infinity);
  const auto mult = discriminant_roots({SymmetricForm::identity(3), SymmetricForm::diagonal({1, 1, 2})});
  REQUIRE(mult.size() == 2);
  CHECK(mult[0].multiplicity == 2);
  CHECK(mult[1].multiplicity == 1);
}

TEST_CASE("inertia profile") {
  SUBCASE("six real roots give twelve discontinuities") {
    const auto prof = inertia_profile(distinct_diagonal());
    CHECK(prof.discontinuities.size() == 12);
    CHECK(prof.arcs.size() == 12);
  }
  SUBCASE("block pencil has constant positive index 3") {
    const auto prof = inertia_profile(block_pencil());
    CHECK(prof.discontinuities.empty());
    REQUIRE(prof.arcs.size() == 1);
    CHECK(prof.arcs[0].value == 3);
  }
  SUBCASE("proportional forms are not generic") {
    const auto q0 = SymmetricForm::diagonal({1, 1, 1, 1, 1, -1});
    CHECK_THROWS_AS(inertia_profile({q0, q0.combine(2, q0, 0)}), NotGeneric);
    CHECK_THROWS_AS(inertia_profile({SymmetricForm::identity(3), SymmetricForm::zero(3)}), NotGeneric);
  }
  SUBCASE("profile invariants on random pencils") {
    PencilGenerator gen(17);
    for (int i = 0; i < 30; ++i) {
      const auto p = gen.generic(6);
      const auto prof = inertia_profile(p);
      const auto& d = prof.discontinuities;
      const std::size_t m = d.size();
      int sum = 0;
      for (std::size_t k = 0; k < m; ++k) {
        CHECK((d[k].jump == 1 || d[k].jump == -1));
        CHECK(prof.arcs[(k + 1) % m].value - prof.arcs[k].value == d[k].jump);
        CHECK(d[k].jump == -d[(k + m / 2) % m].jump);
        sum += d[k].jump;
      }
      CHECK(sum == 0);
      for (const auto& arc : prof.arcs) {
        const Rational l0 = arc.hemisphere == Hemisphere::Positive ? 1 : -1;
        const auto in = inertia(p.at(l0, l0 * arc.sample));
        CHECK(in.zero == 0);
        CHECK(in.positive == arc.value);
      }
    }
  }
}

TEST_CASE("canonical necklace") {
  CHECK(canonical_necklace({4, 1, 1}) == std::vector<int>{1, 1, 4});
  CHECK(canonical_necklace({6}) == std::vector<int>{6});
  CHECK(canonical_necklace({2, 1, 3, 1, 2}) == std::vector<int>{1, 2, 2, 1, 3});
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    std::vector<int> v(1 + rng() % 7);
    for (int& x : v) x = 1 + static_cast<int>(rng() % 4);
    const auto c = canonical_necklace(v);
    CHECK(c == oracle::necklace_min(v));
    CHECK(canonical_necklace(c) == c);
    auto r = v;
    std::rotate(r.begin(), r.begin() + rng() % r.size(), r.end());
    std::reverse(r.begin(), r.end());
    CHECK(canonical_necklace(r) == c);
  }
}

TEST_CASE("classification examples") {
  CHECK(classify(block_pencil()).empty_class());
  CHECK(classify(block_pencil()).to_string() == "(0)");
  CHECK(classify({SymmetricForm::identity(6), SymmetricForm::diagonal({2, 3, 4, 5, 6, 7})}).parts ==
        std::vector<int>{6});
  const auto c = classify(e2_pencil());
  CHECK(c.parts == std::vector<int>{1, 1, 4});
  CHECK(c.k() == 6);
  CHECK(c.to_string() == "(1,1,4)");
  CHECK(classify(distinct_diagonal()).parts == std::vector<int>{1, 1, 4});
  // A root at infinity.
  CHECK(classify({SymmetricForm::identity(6), SymmetricForm::diagonal({2, 3, 4, 5, 6, 0})}).parts ==
        std::vector<int>{6});
  const auto q0 = SymmetricForm::diagonal({1, 1, 1, 1, 1, -1});
  CHECK_THROWS_AS(classify({q0, q0.combine(2, q0, 0)}), NotGeneric);
}

TEST_CASE("interpretation for six variables") {
  CHECK(interpret({{1, 1, 4}}, 6) == TopologyVerdict::TwoComponents);
  CHECK(interpret({}, 6) == TopologyVerdict::Empty);
  CHECK(interpret({{6}}, 6) == TopologyVerdict::AtMostOneComponent);
  CHECK(interpret({{1, 2, 3}}, 6) == TopologyVerdict::AtMostOneComponent);
  CHECK_THROWS_AS(interpret({{1, 1, 4}}, 5), Unsupported);
}

TEST_CASE("classes of random six-variable pencils have even k and an odd number of parts") {
  PencilGenerator gen(2024);
  for (int i = 0; i < 100; ++i) {
    const auto c = classify(gen.generic(6));
    CHECK(c.k() % 2 == 0);
    CHECK(c.k() <= 6);
    if (!c.empty_class()) CHECK(c.parts.size() % 2 == 1);
  }
}

TEST_CASE("classify matches the sampling oracle") {
  PencilGenerator gen(8);
  int compared = 0;
  while (compared < 8) {
    const auto p = gen.generic(6);
    if (oracle::min_root_gap(p) < 3 * 2 * 3.14159265358979 / 10000) continue;
    const auto o = oracle::sampled_class(p);
    CHECK(o.jump_ok);
    CHECK(classify(p).parts == o.parts);
    ++compared;
  }
}

TEST_CASE("pencil JSON round trip") {
  const auto p = e2_pencil();
  const auto q = parse_pencil(pencil_to_json(p));
  CHECK(q.q0 == p.q0);
  CHECK(q.q1 == p.q1);
  CHECK_THROWS_AS(parse_pencil("{\"n\": 2, \"q0\": [[\"1\",\"0\"],[\"0\",\"1\"]]}"), InvalidInput);
  CHECK_THROWS_AS(parse_pencil("{\"n\": 2, \"q0\": [[\"1\",\"2\"],[\"0\",\"1\"]], \"q1\": [[1,0],[0,1]]}"),
                  InvalidInput);
  CHECK_THROWS_AS(parse_pencil("not json"), InvalidInput);
}

TEST_CASE("generator is reproducible") {
  PencilGenerator a(42), b(42);
  CHECK(pencil_to_json(a.generic(6)) == pencil_to_json(b.generic(6)));
}
