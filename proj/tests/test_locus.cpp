#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include <json.hpp>

#include "fanoreal/error.hpp"
#include "fanoreal/locus.hpp"
#include "oracles.hpp"

using namespace fanoreal;

namespace {

const std::string kData = FANOREAL_DATA_DIR;

std::string box2(double r) {
  const std::string s = std::to_string(r);
  return "[[\"-" + s + "\",\"" + s + "\"],[\"-" + s + "\",\"" + s + "\"]]";
}

PolynomialSystem circle() {
  return parse_system(R"({"nvars":2,"polys":[[["1",[2,0]],["1",[0,2]],["-1",[0,0]]]],"domain":)" + box2(2) + "}");
}

PolynomialSystem no_real_points() {
  return parse_system(R"({"nvars":2,"polys":[[["1",[2,0]],["1",[0,2]],["1",[0,0]]]],"domain":)" + box2(2) + "}");
}

PolynomialSystem cross() {
  return parse_system(R"({"nvars":2,"polys":[[["1",[2,0]],["-1",[0,2]]]],"domain":)" + box2(1) + "}");
}

// Two horizontal circles z = +-1/2 on the unit sphere.
PolynomialSystem latitudes(bool antipodal) {
  std::string s = R"({"nvars":3,"polys":[[["4",[0,0,2]],["-1",[0,0,0]]]],"spheres":[[0,1,2]],)";
  if (antipodal) s += R"("antipodal":[[0,1,2]],)";
  return parse_system(s + R"("domain":[[-1,1],[-1,1],[-1,1]]})");
}

PolynomialSystem projective_plane() {
  return parse_system(
      R"({"nvars":3,"polys":[],"spheres":[[0,1,2]],"antipodal":[[0,1,2]],"domain":[[-1,1],[-1,1],[-1,1]]})");
}

// Points of the E1 variant on the great circles y1 = 0 and y0 = 0, by bisection.
std::vector<std::vector<double>> e1_eps_seeds() {
  auto f = [](double y0, double y1, double y2) {
    return (-y0 * y0 - y1 * y1 / 2 + y2 * y2) * (y0 * y0 / 2 + y1 * y1 - y2 * y2) - std::pow(y2, 4) / 16;
  };
  std::vector<std::vector<double>> seeds;
  for (int plane = 0; plane < 2; ++plane) {
    auto at = [&](double a) {
      const double c = std::cos(a), s = std::sin(a);
      return plane == 0 ? std::vector<double>{c, 0, s} : std::vector<double>{0, c, s};
    };
    auto g = [&](double a) {
      const auto p = at(a);
      return f(p[0], p[1], p[2]);
    };
    const int n = 4000;
    for (int k = 0; k < n; ++k) {
      double lo = 2 * std::numbers::pi * k / n, hi = 2 * std::numbers::pi * (k + 1) / n;
      if ((g(lo) < 0) == (g(hi) < 0)) continue;
      for (int it = 0; it < 200; ++it) {
        const double mid = (lo + hi) / 2;
        ((g(mid) < 0) == (g(lo) < 0) ? lo : hi) = mid;
      }
      seeds.push_back(at((lo + hi) / 2));
    }
  }
  return seeds;
}

bool inside(const std::vector<Interval>& outer, const std::vector<Interval>& inner) {
  for (std::size_t k = 0; k < outer.size(); ++k)
    if (!outer[k].contains(inner[k])) return false;
  return true;
}

}  // namespace

TEST_CASE("system files") {
  for (const char* name : {"e1.json", "e1_eps.json", "e2.json", "e3.json", "e4.json", "figure1_quartic.json"}) {
    CAPTURE(name);
    const auto s = load_system(kData + "/systems/" + name);
    CHECK_NOTHROW(s.validate());
  }
  CHECK_THROWS_AS(parse_system("{}"), InvalidInput);
  CHECK_THROWS_AS(parse_system(R"({"nvars":2,"polys":[],"domain":[[0,1]]})"), InvalidInput);
  CHECK_THROWS_AS(
      parse_system(R"({"nvars":2,"polys":[],"spheres":[[0,1],[1]],"domain":[[-1,1],[-1,1]]})"), InvalidInput);
  CHECK_THROWS_AS(parse_system(R"({"nvars":1,"polys":[],"antipodal":[[0]],"domain":[[0,1]]})"), InvalidInput);
  const auto e3 = load_system(kData + "/systems/e3.json");
  // The box must contain [0, sqrt2] x [-sqrt2, sqrt2] coordinatewise.
  CHECK(e3.domain[0].hi >= std::sqrt(2.0));
  CHECK(e3.domain[1].lo <= -std::sqrt(2.0));
}

TEST_CASE("grid coordinates") {
  const Grid g({Interval{-2, 2}, Interval{0, 1}});
  CHECK(g.coord(0, 0, 0) == -2);
  CHECK(g.coord(0, 0, 1) == 2);
  CHECK(g.coord(0, 3, 8) == 2);
  CHECK(g.coord(0, 3, 4) == 0);
  CHECK(g.coord(1, 2, 1) == 0.25);
  const auto key = g.pack({5, 9});
  CHECK(g.unpack(key) == std::vector<std::uint32_t>{5, 9});
  CHECK(g.field(key, 1) == 9);
}

TEST_CASE("circle") {
  const auto s = circle();
  const Cover c = subdivide(s, 6);
  CHECK(c.size() > 0);
  CHECK(c.components() == 1);
  const double cell = 4.0 / 64;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto b = c.box(i);
    const double r = std::hypot(b.bounds[0].mid(), b.bounds[1].mid());
    CHECK(std::fabs(r - 1) < 2 * cell);
  }
  CHECK(c.contains_point({0.6, 0.8}));
  CHECK(c.contains_point({-1, 0}));
  CHECK_FALSE(c.contains_point({0, 0}));
  const auto rep = count_components(s, {4, 5, 6});
  CHECK(rep.component_estimate == 1);
  CHECK(rep.stable);
  CHECK(rep.history.size() == 3);
  CHECK(rep.retained_count == c.size());
}

TEST_CASE("empty real locus") {
  for (int d = 0; d <= 4; ++d) CHECK(subdivide(no_real_points(), d).empty());
  const auto rep = count_components(no_real_points(), {2, 3});
  CHECK(rep.component_estimate == 0);
  CHECK(rep.stable);
}

TEST_CASE("crossing lines against a rasterization oracle") {
  for (int d = 2; d <= 7; ++d) {
    const Cover c = subdivide(cross(), d);
    CHECK(c.components() == 1);
    CHECK(count_components(cross(), {d}).component_estimate == 1);
    // Every closed cell meeting |x| = |y| must be retained.
    const int n = 1 << d;
    std::vector<std::uint64_t> raster;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Interval x = c.grid().cell_interval(0, d, i), y = c.grid().cell_interval(1, d, j);
        const double ax_lo = x.contains_zero() ? 0 : std::min(std::fabs(x.lo), std::fabs(x.hi));
        const double ax_hi = std::max(std::fabs(x.lo), std::fabs(x.hi));
        const double ay_lo = y.contains_zero() ? 0 : std::min(std::fabs(y.lo), std::fabs(y.hi));
        const double ay_hi = std::max(std::fabs(y.lo), std::fabs(y.hi));
        if (ax_lo <= ay_hi && ay_lo <= ax_hi) raster.push_back(c.grid().pack({std::uint32_t(i), std::uint32_t(j)}));
      }
    std::sort(raster.begin(), raster.end());
    CHECK(std::includes(c.keys().begin(), c.keys().end(), raster.begin(), raster.end()));
    CHECK(Cover(c.grid(), d, raster).components() == 1);
  }
}

TEST_CASE("antipodal identification") {
  CHECK(count_components(projective_plane(), {3}).component_estimate == 1);
  CHECK(subdivide(projective_plane(), 3).components({{0, 1, 2}}) == 1);
  CHECK(count_components(latitudes(false), {4, 5}).component_estimate == 2);
  CHECK(count_components(latitudes(true), {4, 5}).component_estimate == 1);
}

TEST_CASE("fast component count agrees with direct labelling") {
  struct Case {
    PolynomialSystem system;
    std::vector<int> depths;
  };
  std::vector<Case> cases = {{circle(), {3, 5, 7}},
                             {cross(), {2, 4, 6}},
                             {latitudes(false), {3, 5}},
                             {latitudes(true), {3, 5}},
                             {load_system(kData + "/systems/e1_eps.json"), {4, 6, 8, 9}},
                             {load_system(kData + "/systems/figure1_quartic.json"), {5, 7}},
                             {load_system(kData + "/systems/e2.json"), {2, 3, 4}}};
  for (const auto& c : cases) {
    for (int d : c.depths) {
      CAPTURE(c.system.name);
      CAPTURE(d);
      const Cover cover = subdivide(c.system, d);
      CHECK(count_components(c.system, {d}).component_estimate == cover.components(c.system.antipodal));
    }
  }
}

TEST_CASE("refinement is monotone") {
  const auto e1 = load_system(kData + "/systems/e1_eps.json");
  const auto e3 = load_system(kData + "/systems/e3.json");
  for (const auto* s : {&e1, &e3}) {
    Cover coarse = subdivide(*s, 1);
    for (int d = 2; d <= (s->nvars == 3 ? 7 : 3); ++d) {
      const Cover fine = subdivide(*s, d);
      for (std::size_t i = 0; i < fine.size(); ++i) {
        const Box child = fine.box(i);
        std::vector<std::uint32_t> parent = child.index;
        for (auto& x : parent) x >>= 1;
        const std::uint64_t key = coarse.grid().pack(parent);
        const bool kept = std::binary_search(coarse.keys().begin(), coarse.keys().end(), key);
        CHECK(kept);
        if (!kept) break;
        CHECK(inside(coarse.grid().box(key, d - 1), child.bounds));
      }
      coarse = fine;
    }
  }
}

TEST_CASE("known solutions are never discarded") {
  SUBCASE("E1 variant") {
    const auto s = load_system(kData + "/systems/e1_eps.json");
    const auto seeds = e1_eps_seeds();
    CHECK(seeds.size() >= 8);
    for (int d = 0; d <= 9; ++d) {
      const Cover c = subdivide(s, d);
      for (const auto& p : seeds) CHECK(c.contains_point(p));
    }
  }
  SUBCASE("E2") {
    const auto s = load_system(kData + "/systems/e2.json");
    // Points with a single nonzero x_i besides x5.
    const double coef[4] = {2, 9.0 / 4, 5.0 / 2, 11.0 / 4};
    std::vector<std::vector<double>> seeds;
    for (int i = 0; i < 4; ++i) {
      const double xi = std::sqrt(0.75 / (coef[i] - 0.25));
      const double x5 = std::sqrt(1 - xi * xi);
      for (double sx : {-1.0, 1.0})
        for (double s5 : {-1.0, 1.0}) {
          std::vector<double> p(5, 0.0);
          p[i] = sx * xi;
          p[4] = s5 * x5;
          seeds.push_back(p);
        }
    }
    for (int d = 0; d <= 4; ++d) {
      const Cover c = subdivide(s, d);
      for (const auto& p : seeds) CHECK(c.contains_point(p));
    }
  }
  SUBCASE("E3") {
    const auto s = load_system(kData + "/systems/e3.json");
    std::vector<std::vector<double>> seeds;
    for (double b : {0.0, 0.1, -0.3, 0.5}) {
      const auto p = oracle::fixed_point(b, -b / 2, b / 3);
      seeds.emplace_back(p.begin(), p.end());
    }
    for (int d = 0; d <= 3; ++d) {
      const Cover c = subdivide(s, d);
      for (const auto& p : seeds) CHECK(c.contains_point(p));
    }
  }
}

TEST_CASE("E1 variant separates into four ovals") {
  const auto s = load_system(kData + "/systems/e1_eps.json");
  const auto rep = count_components(s, {9, 10});
  CHECK(rep.component_estimate == 4);
  CHECK(rep.stable);
}

TEST_CASE("printed E1 quartic has no real points on the sphere") {
  const auto s = load_system(kData + "/systems/e1.json");
  CHECK(subdivide(s, 6).empty());
}

TEST_CASE("parallel subdivision is deterministic") {
  const auto s = load_system(kData + "/systems/e1_eps.json");
  const Cover a = subdivide(s, 8, {10'000'000, 1});
  const Cover b = subdivide(s, 8, {10'000'000, 4});
  CHECK(a.keys() == b.keys());
  const auto ra = count_components(s, {7, 8}, {10'000'000, 1});
  const auto rb = count_components(s, {7, 8}, {10'000'000, 3});
  CHECK(ra.component_estimate == rb.component_estimate);
  CHECK(ra.retained_count == rb.retained_count);
}

TEST_CASE("budget") {
  CHECK_THROWS_AS(subdivide(circle(), 8, {100, 1}), BudgetExceeded);
  CHECK_THROWS_AS(count_components(circle(), {4, 8}, {100, 1}), BudgetExceeded);
}

TEST_CASE("cover export") {
  const Cover c = subdivide(circle(), 5);
  const auto doc = nlohmann::json::parse(export_cover_json(c));
  CHECK(doc["schema"] == "fanoreal.cover/1");
  CHECK(doc["count"] == c.size());
  CHECK(doc["boxes"].size() == c.size());
  const std::string svg = export_cover_svg(c);
  std::size_t rects = 0;
  for (std::size_t pos = svg.find("<rect x="); pos != std::string::npos; pos = svg.find("<rect x=", pos + 1)) ++rects;
  CHECK(rects == c.size());
  const Cover empty = subdivide(no_real_points(), 3);
  CHECK(nlohmann::json::parse(export_cover_json(empty))["boxes"].empty());
  CHECK_NOTHROW(export_cover_svg(subdivide(latitudes(true), 3)));
  CHECK_THROWS_AS(export_cover_svg(subdivide(load_system(kData + "/systems/e2.json"), 1)), Unsupported);
}
