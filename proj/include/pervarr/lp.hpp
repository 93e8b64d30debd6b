#pragma once
#include <optional>
#include <vector>

#include "pervarr/rational.hpp"

namespace pervarr {

/// Homogeneous system: eq rows demand eq.x = 0, gt rows demand gt.x > 0.
/// All the geometric predicates (face realizability, collinearity) reduce
/// to systems of this shape because central-arrangement faces are cones.
struct StrictSystem {
  std::size_t dim = 0;
  std::vector<Vec> eqs;
  std::vector<Vec> gts;
};

/// Exact Fourier-Motzkin elimination for strict systems. Returns a rational
/// witness when feasible, nullopt otherwise.
std::optional<Vec> feasible_point(const StrictSystem& sys);

}  // namespace pervarr
