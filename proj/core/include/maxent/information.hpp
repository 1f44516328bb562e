#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "maxent/measure.hpp"
#include "maxent/space.hpp"

namespace maxent {

/// H_M(P) = sum_x P(x) ln(M(x)/P(x)), with 0 ln(M/0) = 0.
double entropy(const Distribution& p, const Measure& m);

/// -ln(Q(x)/M(x)); +infinity when Q(x) = 0.
double log_loss(std::size_t x, const Distribution& q, const Measure& m);

/// E_P[-ln(Q/M)]; +infinity when Q vanishes somewhere P does not.
double expected_log_loss(const Distribution& p, const Distribution& q, const Measure& m);

Value expectation(const Distribution& p, const RandomVariable& psi);

/// E_P[Y | Z = z]. Throws ZeroProbabilityConditioning when P(Z = z) = 0.
Value conditional_expectation(const Distribution& p, const RandomVariable& y,
                              const RandomVariable& z, std::span<const double> z_value,
                              double tolerance = 1e-9);

/// Table g with g(phi(x)) = psi(x) on the scanned subset.
struct DeterminationWitness {
  std::vector<Value> domain;
  std::vector<Value> image;

  /// g(v), or nullopt when v is outside the scanned part of range(phi).
  std::optional<Value> apply(std::span<const double> v, double tolerance = 1e-9) const;
};

struct DeterminationResult {
  std::optional<DeterminationWitness> witness;
  /// x, x' in the subset with phi(x) = phi(x') but psi(x) != psi(x').
  std::optional<std::pair<std::size_t, std::size_t>> counterexample;

  explicit operator bool() const noexcept { return witness.has_value(); }
};

/// Brute-force fiber scan: does phi determine psi on `subset`?
DeterminationResult determines(const RandomVariable& phi, const RandomVariable& psi,
                               const OutcomeSet& subset, double tolerance = 1e-9);

/// A measure on range(phi); outcome i of `measure.space()` is `range[i]`.
struct RangeMeasure {
  std::vector<Value> range;
  Measure measure;
};

struct RangeDistribution {
  std::vector<Value> range;
  Distribution distribution;
};

/// Space labelled by the formatted values of `range`.
SpacePtr make_range_space(const std::vector<Value>& range);

RangeMeasure pushforward_measure(const Measure& m, const RandomVariable& phi);
RangeDistribution pushforward(const Distribution& p, const RandomVariable& phi);

/// The family of base measures whose pushforward under phi is uniform (U_phi).
MeasureFamily uniform_measure_on_range(const RandomVariable& phi);

}  // namespace maxent
