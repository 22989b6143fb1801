#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fanoreal/interval.hpp"
#include "fanoreal/mpoly.hpp"

namespace fanoreal {

/// Polynomial equations, optional unit-sphere constraints on disjoint variable
/// groups, optional antipodal identifications x -> -x on variable groups, and
/// a bounded search domain.
struct PolynomialSystem {
  std::string name;
  int nvars = 0;
  std::vector<std::string> vars;
  std::vector<MultiPolynomial> polys;
  std::vector<std::vector<int>> spheres;
  std::vector<std::vector<int>> antipodal;
  std::vector<Interval> domain;

  /// Throws InvalidInput on inconsistent dimensions, overlapping sphere
  /// groups, antipodal groups over a non-symmetric domain, or an unbounded
  /// or empty domain.
  void validate() const;

  /// True if the box provably contains no solution: some polynomial's
  /// enclosure excludes 0, or some sphere's sum of squares excludes 1.
  bool excludes(const std::vector<Interval>& box) const;
};

PolynomialSystem load_system(const std::string& path);
PolynomialSystem parse_system(const std::string& json_text);

struct SubdivisionOptions {
  std::uint64_t budget = 10'000'000;  // cap on retained boxes at any depth
  int threads = 1;
};

/// Dyadic grid over a domain. At depth d every axis is cut into 2^d equal
/// cells; depth d + 1 halves every cell of depth d along each axis in turn.
class Grid {
 public:
  Grid() = default;
  explicit Grid(std::vector<Interval> domain);

  int dims() const { return static_cast<int>(lo_.size()); }
  int bits_per_axis() const { return bits_; }
  int max_depth() const { return bits_; }

  /// Endpoint i of axis `axis` at the given depth, i in [0, 2^depth].
  double coord(int axis, int depth, std::uint64_t i) const;
  Interval cell_interval(int axis, int depth, std::uint64_t i) const {
    return {coord(axis, depth, i), coord(axis, depth, i + 1)};
  }

  std::uint64_t pack(const std::vector<std::uint32_t>& cell) const;
  std::vector<std::uint32_t> unpack(std::uint64_t key) const;
  std::uint32_t field(std::uint64_t key, int axis) const {
    return static_cast<std::uint32_t>((key >> shift(axis)) & field_mask_);
  }
  int shift(int axis) const { return (dims() - 1 - axis) * bits_; }
  std::vector<Interval> box(std::uint64_t key, int depth) const;

 private:
  std::vector<double> lo_, hi_, width_;
  int bits_ = 0;
  std::uint64_t field_mask_ = 0;
};

/// One retained box of a cover, with its grid position.
struct Box {
  std::vector<Interval> bounds;
  int depth = 0;
  std::vector<std::uint32_t> index;
};

/// Boxes of one depth that survive the discard test. Two boxes are adjacent
/// iff their closures intersect.
class Cover {
 public:
  Cover(Grid grid, int depth, std::vector<std::uint64_t> keys);

  int depth() const { return depth_; }
  int dims() const { return grid_.dims(); }
  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  const Grid& grid() const { return grid_; }
  const std::vector<std::uint64_t>& keys() const { return keys_; }
  Box box(std::size_t i) const;
  bool contains_point(const std::vector<double>& x) const;
  bool adjacent(std::size_t i, std::size_t j) const;

  /// Connected components of the adjacency graph plus identification edges,
  /// computed directly on the boxes.
  std::size_t components(const std::vector<std::vector<int>>& antipodal = {}) const;

 private:
  Grid grid_;
  int depth_;
  std::vector<std::uint64_t> keys_;  // sorted
};

/// Retained boxes at max_depth. Throws BudgetExceeded.
Cover subdivide(const PolynomialSystem& system, int max_depth, const SubdivisionOptions& options = {});

struct DepthEstimate {
  int depth = 0;
  std::uint64_t retained = 0;
  std::size_t components = 0;
};

struct ComponentReport {
  int depth = 0;
  std::uint64_t retained_count = 0;
  std::size_t component_estimate = 0;
  std::vector<DepthEstimate> history;
  bool stable = false;
};

/// Component estimates at each scheduled depth (ascending, distinct).
/// Throws BudgetExceeded.
ComponentReport count_components(const PolynomialSystem& system, const std::vector<int>& depths,
                                 const SubdivisionOptions& options = {});

/// Structured box list; JSON object text.
std::string export_cover_json(const Cover& cover);
/// Rectangle list for 2D covers; with three dimensions the first two
/// coordinates are projected. Throws Unsupported for other dimensions.
std::string export_cover_svg(const Cover& cover, int width_px = 800);

}  // namespace fanoreal
