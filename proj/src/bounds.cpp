#include "fanoreal/bounds.hpp"

#include <algorithm>
#include <string>

#include "fanoreal/error.hpp"

namespace fanoreal {

void HodgeData::validate() const {
  if (rho_c < 1) throw InvalidInput("rho_c must be positive");
  if (h12 < 0) throw InvalidInput("h12 must be nonnegative");
  if (rho_r && (*rho_r < 1 || *rho_r > rho_c))
    throw InvalidInput("rho_r must satisfy 1 <= rho_r <= rho_c");
  if (lambda) {
    if (*lambda < 0) throw InvalidInput("lambda must be nonnegative");
    if (*lambda > rho_c) throw InvalidInput("lambda must not exceed rho_c");
    if (rho_r && *lambda > *rho_r) throw InvalidInput("lambda must not exceed rho_r");
  }
}

int smith_thom_bound(const HodgeData& d) {
  d.validate();
  return 1 + d.h12 + d.rho_c;
}

int borel_swan_bound(const HodgeData& d) {
  if (!d.lambda) throw MissingLambda("the refined bound needs lambda");
  return smith_thom_bound(d) - 2 * *d.lambda;
}

BoundReport component_bounds(const HodgeData& d) {
  BoundReport r;
  r.bound1 = smith_thom_bound(d);
  r.best = r.bound1;
  if (d.lambda) {
    const int raw = borel_swan_bound(d);
    r.clamped = raw < 0;
    r.bound2 = std::max(raw, 0);
    r.best = std::min(r.best, *r.bound2);
  }
  return r;
}

}  // namespace fanoreal
