#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <thread>

#include "fanoreal/error.hpp"
#include "fanoreal/locus.hpp"

namespace fanoreal {

// ---------------------------------------------------------------- grid

Grid::Grid(std::vector<Interval> domain) {
  const int d = static_cast<int>(domain.size());
  if (d < 1 || d > 6) throw Unsupported("subdivision supports 1 to 6 variables, got " + std::to_string(d));
  for (const auto& iv : domain) {
    lo_.push_back(iv.lo);
    hi_.push_back(iv.hi);
    width_.push_back(iv.hi - iv.lo);
  }
  bits_ = std::min(64 / d, 31);
  field_mask_ = (std::uint64_t{1} << bits_) - 1;
}

double Grid::coord(int axis, int depth, std::uint64_t i) const {
  const std::uint64_t n = std::uint64_t{1} << depth;
  if (i >= n) return hi_[axis];
  return lo_[axis] + static_cast<double>(i) * std::ldexp(width_[axis], -depth);
}

std::uint64_t Grid::pack(const std::vector<std::uint32_t>& cell) const {
  std::uint64_t key = 0;
  for (int a = 0; a < dims(); ++a) key |= static_cast<std::uint64_t>(cell[a]) << shift(a);
  return key;
}

std::vector<std::uint32_t> Grid::unpack(std::uint64_t key) const {
  std::vector<std::uint32_t> cell(static_cast<std::size_t>(dims()));
  for (int a = 0; a < dims(); ++a) cell[a] = field(key, a);
  return cell;
}

std::vector<Interval> Grid::box(std::uint64_t key, int depth) const {
  std::vector<Interval> b(static_cast<std::size_t>(dims()));
  for (int a = 0; a < dims(); ++a) b[a] = cell_interval(a, depth, field(key, a));
  return b;
}

// ---------------------------------------------------------------- cover

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

// Offsets in {-1,0,1}^D whose first nonzero entry is +1.
std::vector<std::vector<int>> positive_directions(int dims) {
  std::vector<std::vector<int>> out;
  std::vector<int> d(static_cast<std::size_t>(dims), -1);
  for (;;) {
    auto first = std::find_if(d.begin(), d.end(), [](int x) { return x != 0; });
    if (first != d.end() && *first == 1) out.push_back(d);
    int a = dims - 1;
    while (a >= 0 && d[a] == 1) d[a--] = -1;
    if (a < 0) break;
    ++d[a];
  }
  return out;
}

// Returns false if the shifted cell leaves [0, n) on some axis.
bool shifted_key(const Grid& g, std::uint64_t key, const std::vector<int>& delta, std::uint64_t n,
                 std::uint64_t& out) {
  out = key;
  for (int a = 0; a < g.dims(); ++a) {
    if (delta[a] == 0) continue;
    const std::uint64_t c = g.field(key, a);
    if (delta[a] > 0 ? c + 1 >= n : c == 0) return false;
    const std::uint64_t unit = std::uint64_t{1} << g.shift(a);
    out = delta[a] > 0 ? out + unit : out - unit;
  }
  return true;
}

std::uint64_t mirrored_key(const Grid& g, std::uint64_t key, const std::vector<int>& group, std::uint64_t n) {
  for (int a : group) {
    const std::uint64_t c = g.field(key, a);
    key = (key & ~(((std::uint64_t{1} << g.bits_per_axis()) - 1) << g.shift(a))) | ((n - 1 - c) << g.shift(a));
  }
  return key;
}

std::ptrdiff_t find_key(const std::vector<std::uint64_t>& keys, std::uint64_t k) {
  auto it = std::lower_bound(keys.begin(), keys.end(), k);
  return it != keys.end() && *it == k ? it - keys.begin() : -1;
}

}  // namespace

Cover::Cover(Grid grid, int depth, std::vector<std::uint64_t> keys)
    : grid_(std::move(grid)), depth_(depth), keys_(std::move(keys)) {
  std::sort(keys_.begin(), keys_.end());
}

Box Cover::box(std::size_t i) const {
  return {grid_.box(keys_[i], depth_), depth_, grid_.unpack(keys_[i])};
}

bool Cover::contains_point(const std::vector<double>& x) const {
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    const auto b = grid_.box(keys_[i], depth_);
    bool inside = true;
    for (int a = 0; a < dims() && inside; ++a) inside = b[a].contains(x[a]);
    if (inside) return true;
  }
  return false;
}

bool Cover::adjacent(std::size_t i, std::size_t j) const {
  const auto a = grid_.box(keys_[i], depth_), b = grid_.box(keys_[j], depth_);
  for (int k = 0; k < dims(); ++k)
    if (a[k].hi < b[k].lo || b[k].hi < a[k].lo) return false;
  return true;
}

std::size_t Cover::components(const std::vector<std::vector<int>>& antipodal) const {
  const std::uint64_t n = std::uint64_t{1} << depth_;
  UnionFind uf(keys_.size());
  const auto dirs = positive_directions(dims());
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    for (const auto& d : dirs) {
      std::uint64_t k;
      if (!shifted_key(grid_, keys_[i], d, n, k)) continue;
      const auto j = find_key(keys_, k);
      if (j >= 0) uf.unite(i, static_cast<std::size_t>(j));
    }
    for (const auto& g : antipodal) {
      const auto j = find_key(keys_, mirrored_key(grid_, keys_[i], g, n));
      if (j >= 0) uf.unite(i, static_cast<std::size_t>(j));
    }
  }
  std::size_t roots = 0;
  for (std::size_t i = 0; i < keys_.size(); ++i) roots += uf.find(i) == i;
  return roots;
}

// ---------------------------------------------------------------- subdivision

namespace {

// Cells of one depth plus, for each, the bitmask of its surviving children
// one depth finer (bit b: child whose offset on axis a is bit a of b).
struct Level {
  int depth = 0;
  std::vector<std::uint64_t> keys;
  std::vector<std::uint64_t> masks;
};

class Refiner {
 public:
  Refiner(const PolynomialSystem& system, const Grid& grid) : system_(system), grid_(grid) {}

  std::uint64_t child_mask(std::uint64_t key, int parent_depth) const {
    std::vector<Interval> box = grid_.box(key, parent_depth);
    std::uint64_t mask = 0;
    split(0, key, parent_depth + 1, box, 0, mask);
    return mask;
  }

 private:
  // Bisect axis `axis` of the box, keep halves that survive the discard test.
  void split(int axis, std::uint64_t key, int depth, std::vector<Interval>& box, unsigned child,
             std::uint64_t& mask) const {
    if (axis == grid_.dims()) {
      mask |= std::uint64_t{1} << child;
      return;
    }
    const Interval saved = box[axis];
    const std::uint64_t base = 2 * static_cast<std::uint64_t>(grid_.field(key, axis));
    for (unsigned b = 0; b < 2; ++b) {
      box[axis] = grid_.cell_interval(axis, depth, base + b);
      if (system_.excludes(box)) continue;
      split(axis + 1, key, depth, box, child | (b << axis), mask);
    }
    box[axis] = saved;
  }

  const PolynomialSystem& system_;
  const Grid& grid_;
};

void compute_masks(const Refiner& refiner, Level& level, int threads) {
  const std::size_t n = level.keys.size();
  level.masks.assign(n, 0);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) level.masks[i] = refiner.child_mask(level.keys[i], level.depth);
  };
  const std::size_t t = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(threads), n / 64 + 1));
  if (t == 1) {
    work(0, n);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + t - 1) / t;
  for (std::size_t c = 0; c < t; ++c) {
    const std::size_t b = c * chunk, e = std::min(n, b + chunk);
    if (b < e) pool.emplace_back(work, b, e);
  }
  for (auto& th : pool) th.join();
}

std::uint64_t retained_children(const Level& level) {
  std::uint64_t total = 0;
  for (std::uint64_t m : level.masks) total += static_cast<std::uint64_t>(std::popcount(m));
  return total;
}

std::vector<std::uint64_t> children(const Grid& grid, const Level& level) {
  std::vector<std::uint64_t> out;
  out.reserve(retained_children(level));
  const int dims = grid.dims();
  for (std::size_t i = 0; i < level.keys.size(); ++i) {
    std::uint64_t m = level.masks[i];
    const std::uint64_t base = level.keys[i] << 1;
    while (m) {
      const unsigned b = static_cast<unsigned>(std::countr_zero(m));
      m &= m - 1;
      std::uint64_t k = base;
      for (int a = 0; a < dims; ++a)
        if (b >> a & 1u) k |= std::uint64_t{1} << grid.shift(a);
      out.push_back(k);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Children of a cell that touch the face selected by delta: offset bit 1 on
// axes with delta +1, bit 0 on axes with delta -1.
std::uint64_t face_mask(const std::vector<int>& delta) {
  const unsigned count = 1u << delta.size();
  std::uint64_t mask = 0;
  for (unsigned b = 0; b < count; ++b) {
    bool ok = true;
    for (std::size_t a = 0; a < delta.size() && ok; ++a)
      ok = delta[a] == 0 || (delta[a] > 0) == static_cast<bool>(b >> a & 1u);
    if (ok) mask |= std::uint64_t{1} << b;
  }
  return mask;
}

std::uint64_t flip_children(std::uint64_t mask, unsigned axes) {
  std::uint64_t out = 0;
  while (mask) {
    const unsigned b = static_cast<unsigned>(std::countr_zero(mask));
    mask &= mask - 1;
    out |= std::uint64_t{1} << (b ^ axes);
  }
  return out;
}

// Components of the children cover, working on parents: the children of one
// parent all share the parent's centre, so each parent is a single node, and
// two parents are linked iff a surviving child of each touches the common
// face, edge or corner.
std::size_t count_from_masks(const Grid& grid, const Level& level,
                             const std::vector<std::vector<int>>& antipodal) {
  const std::size_t n = level.keys.size();
  const std::uint64_t side = std::uint64_t{1} << level.depth;
  UnionFind uf(n);
  for (const auto& delta : positive_directions(grid.dims())) {
    std::vector<int> neg(delta.size());
    std::transform(delta.begin(), delta.end(), neg.begin(), [](int x) { return -x; });
    const std::uint64_t mine = face_mask(delta), theirs = face_mask(neg);
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(level.masks[i] & mine)) continue;
      std::uint64_t target;
      if (!shifted_key(grid, level.keys[i], delta, side, target)) continue;
      while (j < n && level.keys[j] < target) ++j;
      if (j == n) break;
      if (level.keys[j] == target && (level.masks[j] & theirs)) uf.unite(i, j);
    }
  }
  for (const auto& group : antipodal) {
    unsigned axes = 0;
    for (int a : group) axes |= 1u << a;
    for (std::size_t i = 0; i < n; ++i) {
      if (!level.masks[i]) continue;
      const auto j = find_key(level.keys, mirrored_key(grid, level.keys[i], group, side));
      if (j >= 0 && (flip_children(level.masks[i], axes) & level.masks[static_cast<std::size_t>(j)]))
        uf.unite(i, static_cast<std::size_t>(j));
    }
  }
  std::size_t roots = 0;
  for (std::size_t i = 0; i < n; ++i) roots += level.masks[i] && uf.find(i) == i;
  return roots;
}

void check_depth(const Grid& grid, int depth) {
  if (depth < 0 || depth > grid.max_depth())
    throw InvalidInput("depth " + std::to_string(depth) + " outside [0, " + std::to_string(grid.max_depth()) +
                       "] for " + std::to_string(grid.dims()) + " variables");
}

void check_budget(std::uint64_t retained, int depth, const SubdivisionOptions& options) {
  if (retained > options.budget)
    throw BudgetExceeded("depth " + std::to_string(depth) + " retains " + std::to_string(retained) +
                         " boxes, above the budget of " + std::to_string(options.budget));
}

Level root_level(const PolynomialSystem& system, const Grid& grid) {
  Level level;
  if (!system.excludes(grid.box(0, 0))) level.keys.push_back(0);
  return level;
}

}  // namespace

Cover subdivide(const PolynomialSystem& system, int max_depth, const SubdivisionOptions& options) {
  system.validate();
  Grid grid(system.domain);
  check_depth(grid, max_depth);
  const Refiner refiner(system, grid);
  Level level = root_level(system, grid);
  for (int d = 0; d < max_depth; ++d) {
    compute_masks(refiner, level, options.threads);
    check_budget(retained_children(level), d + 1, options);
    Level next;
    next.depth = d + 1;
    next.keys = children(grid, level);
    level = std::move(next);
  }
  return Cover(grid, max_depth, std::move(level.keys));
}

ComponentReport count_components(const PolynomialSystem& system, const std::vector<int>& depths,
                                 const SubdivisionOptions& options) {
  system.validate();
  if (depths.empty()) throw InvalidInput("depth schedule is empty");
  for (std::size_t i = 1; i < depths.size(); ++i)
    if (depths[i] <= depths[i - 1]) throw InvalidInput("depth schedule must be strictly increasing");
  Grid grid(system.domain);
  check_depth(grid, depths.back());
  const Refiner refiner(system, grid);

  ComponentReport report;
  Level level = root_level(system, grid);
  std::size_t next_scheduled = 0;
  if (depths[0] == 0) {
    std::size_t c = level.keys.size();
    report.history.push_back({0, level.keys.size(), c});
    ++next_scheduled;
  }
  for (int d = 0; next_scheduled < depths.size(); ++d) {
    compute_masks(refiner, level, options.threads);
    const std::uint64_t retained = retained_children(level);
    check_budget(retained, d + 1, options);
    if (depths[next_scheduled] == d + 1) {
      report.history.push_back({d + 1, retained, count_from_masks(grid, level, system.antipodal)});
      ++next_scheduled;
      if (next_scheduled == depths.size()) break;
    }
    Level next;
    next.depth = d + 1;
    next.keys = children(grid, level);
    level = std::move(next);
  }
  const DepthEstimate& last = report.history.back();
  report.depth = last.depth;
  report.retained_count = last.retained;
  report.component_estimate = last.components;
  report.stable = report.history.size() >= 2 &&
                  report.history[report.history.size() - 2].components == last.components;
  return report;
}

}  // namespace fanoreal
