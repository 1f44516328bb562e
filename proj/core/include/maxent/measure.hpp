#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "maxent/rng.hpp"
#include "maxent/space.hpp"

namespace maxent {

/// Strictly positive weights on a space. M(A) is the sum over A.
class Measure {
 public:
  Measure(SpacePtr space, std::vector<double> weights);

  static Measure uniform(SpacePtr space, double weight = 1.0);

  const SpacePtr& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t x) const { return weights_[x]; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double total() const noexcept { return total_; }
  double mass(const OutcomeSet& event) const;

  Measure scaled(double c) const;

 private:
  SpacePtr space_;
  std::vector<double> weights_;
  double total_ = 0.0;
};

/// Probabilities on a space. Zeros are allowed; the sum is 1 to 1e-12.
class Distribution {
 public:
  Distribution(SpacePtr space, std::vector<double> probs);

  static Distribution uniform(SpacePtr space);
  static Distribution point_mass(SpacePtr space, std::size_t x);
  /// Clamps tiny negatives to zero and rescales to unit mass.
  static Distribution normalized(SpacePtr space, std::vector<double> weights);
  /// M / M(Omega).
  static Distribution from_measure(const Measure& m);

  const SpacePtr& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t x) const { return probs_[x]; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  double mass(const OutcomeSet& event) const;
  OutcomeSet support() const;

 private:
  SpacePtr space_;
  std::vector<double> probs_;
};

double total_variation(const Distribution& p, const Distribution& q);
double max_abs_difference(const Distribution& p, const Distribution& q);

/// The set of a priori possible underlying measures.
class MeasureFamily {
 public:
  struct Singleton {
    Measure measure;
  };
  struct UniformOnBase {
    SpacePtr space;
  };
  struct AllMeasures {
    SpacePtr space;
  };
  /// Every base measure whose pushforward under `coarsening` equals
  /// `reference`, given as one weight per element of coarsening.range().
  struct CompatibleWith {
    RandomVariable coarsening;
    std::vector<double> reference;
  };
  using Kind = std::variant<Singleton, UniformOnBase, AllMeasures, CompatibleWith>;

  explicit MeasureFamily(Kind kind);

  static MeasureFamily singleton(Measure m) { return MeasureFamily(Singleton{std::move(m)}); }
  static MeasureFamily uniform_on_base(SpacePtr s) { return MeasureFamily(UniformOnBase{std::move(s)}); }
  static MeasureFamily all_measures(SpacePtr s) { return MeasureFamily(AllMeasures{std::move(s)}); }
  static MeasureFamily compatible_with(RandomVariable coarsening, std::vector<double> reference);

  const Kind& kind() const noexcept { return kind_; }
  const SpacePtr& space() const;
  /// True for singleton and uniform-on-base.
  bool is_single() const noexcept;
  const char* kind_name() const noexcept;

  /// A canonical member: the singleton, U_X, or the even split of each fiber.
  Measure representative() const;
  bool contains(const Measure& m, double tolerance = 1e-9) const;
  /// Random member. Deterministic given the generator state.
  Measure sample(Rng& rng) const;

 private:
  Kind kind_;
};

}  // namespace maxent
