#pragma once

#include <optional>

namespace fanoreal {

/// Hodge-theoretic input of the component bounds for a real Fano threefold X.
struct HodgeData {
  int rho_c = 1;                 // Picard rank of X over C
  std::optional<int> rho_r;      // real Picard rank
  int h12 = 0;                   // Hodge number h^{1,2}
  std::optional<int> lambda;     // rank of (1 + sigma) Pic(X_C)

  /// Throws InvalidInput unless rho_c >= 1, h12 >= 0 and
  /// 0 <= lambda <= rho_r <= rho_c for the fields present.
  void validate() const;
};

struct BoundReport {
  int bound1 = 0;
  std::optional<int> bound2;
  int best = 0;
  bool clamped = false;  // bound2 was negative and reported as 0
};

/// Smith-Thom: s <= 1 + h12 + rho_c.
int smith_thom_bound(const HodgeData& d);

/// Borel-Swan refinement: s <= 1 + h12 + rho_c - 2 lambda. Throws
/// MissingLambda. The raw value may be negative.
int borel_swan_bound(const HodgeData& d);

/// Both bounds; a negative bound2 is clamped to 0 and flagged.
BoundReport component_bounds(const HodgeData& d);

}  // namespace fanoreal
