#pragma once

#include <vector>

#include "maxent/maxent.hpp"

namespace bench {

// Constraint rows whose targets are the moments of a random interior point,
// so the set is feasible with full support.
inline maxent::ConstraintSet random_constraints(std::size_t n, std::size_t k, std::uint64_t seed) {
  maxent::Rng rng(seed);
  auto space = maxent::make_numbered_space(n);
  std::vector<double> table(n * k);
  for (double& v : table) v = rng.uniform(-1.0, 1.0);
  std::vector<double> w(n);
  for (double& v : w) v = rng.exponential();
  const auto p = maxent::Distribution::normalized(space, w);
  maxent::RandomVariable phi(space, k, table);
  return maxent::ConstraintSet::create(maxent::ConstraintSpec(phi, maxent::expectation(p, phi)));
}

}  // namespace bench
