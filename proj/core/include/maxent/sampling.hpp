#pragma once

#include <cstddef>
#include <vector>

#include "maxent/constraints.hpp"
#include "maxent/measure.hpp"
#include "maxent/rng.hpp"

namespace maxent {

struct HitAndRunOptions {
  std::size_t burn_in = 200;
  std::size_t thin = 10;
};

/// Approximately uniform draws from C by hit-and-run on its standard-form
/// polytope. Walks start at the LP interior point; variables that vanish on
/// all of C stay pinned at zero. Deterministic given the generator state.
std::vector<Distribution> hit_and_run(const ConstraintSet& c, std::size_t count, Rng& rng,
                                      const HitAndRunOptions& options = {});

}  // namespace maxent
