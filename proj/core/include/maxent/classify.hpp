#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxent/constraints.hpp"
#include "maxent/measure.hpp"
#include "maxent/solver.hpp"

namespace maxent {

/// Guessing E_{P*}[Y | Z] from P^me_M for M ranging over a family.
struct ApplicationQuery {
  ConstraintSet constraints;
  MeasureFamily measures;
  RandomVariable y;
  RandomVariable z;
  /// Candidate V for the calibration level when range(Z) is too large to
  /// enumerate its partitions.
  std::vector<RandomVariable> calibration_candidates = {};
  std::uint64_t seed = 0x5eed;

  const SpacePtr& space() const noexcept { return constraints.space(); }
};

enum class ApplicationLevel { ConditionallyCorrect, ConditionallyCalibrated, WellDefined, IllDefined };

const char* to_string(ApplicationLevel level) noexcept;

struct AffineCertificate {
  /// alpha_0..alpha_k for each component of psi.
  std::vector<std::vector<double>> coefficients;
  double residual = 0.0;
};

struct AffineTestResult {
  std::optional<AffineCertificate> certificate;
  double residual = 0.0;
  /// Outcome with the largest residual.
  std::size_t worst_outcome = 0;

  explicit operator bool() const noexcept { return certificate.has_value(); }
};

/// Least-squares fit of psi against [1, phi] over `subset`.
AffineTestResult affine_test(const RandomVariable& psi, const RandomVariable& phi,
                             const OutcomeSet& subset, double tolerance = 1e-7);

/// The rows of C (spec rows, then conditioning indicators) as one variable.
RandomVariable constraint_features(const ConstraintSet& c);

struct ConditionCell {
  Value z;
  bool feasible = false;
  OutcomeSet support;
  std::optional<AffineTestResult> affine;
  /// LP range of E[Y_i] over C^(z), per component.
  std::vector<double> lp_min;
  std::vector<double> lp_max;
};

struct CalibrationCell {
  OutcomeSet outcomes;
  std::vector<Value> z_values;
  double min_probability = 0.0;
  bool degenerate = false;
  Value guess;
  /// Largest |E_{P*}[(Y - c) 1_{V=v}]| over C.
  double lp_deviation = 0.0;
  /// Largest spread of c over the sampled measures.
  double measure_spread = 0.0;
  /// Largest |E[Y | Z=z] - c| under the sampled P^me.
  double z_deviation = 0.0;
  bool passed = false;
};

struct CalibrationVerdict {
  bool holds = false;
  std::vector<CalibrationCell> cells;
  std::size_t measures_checked = 0;
  std::string note;
};

/// The calibration check for one V. Throws ZNotDeterminingV.
CalibrationVerdict calibration_test(const ApplicationQuery& query, const RandomVariable& v);

struct AgreementReport {
  std::size_t measures = 0;
  /// Largest spread of any guess component over the sampled measures.
  double max_spread = 0.0;
  /// Guess per z (rows) under each sampled measure (columns), first component.
  std::vector<Value> z_values;
  std::vector<std::vector<double>> table;
};

struct SeparatingPair {
  Measure first;
  Measure second;
  Value z;
  Value guess_first;
  Value guess_second;
  double difference = 0.0;
  std::size_t attempts = 0;
};

struct ApplicationClass {
  ApplicationLevel level = ApplicationLevel::IllDefined;
  std::vector<ConditionCell> cells;
  std::optional<CalibrationVerdict> calibration;
  /// For calibrated verdicts: the partition of range(Z) used as V.
  std::vector<std::vector<Value>> partition;
  std::optional<bool> phi_determines_y;
  std::optional<AgreementReport> agreement;
  std::optional<SeparatingPair> separation;
  /// Largest guess difference seen during the separating search.
  double search_difference = 0.0;
  std::vector<std::string> caveats;
  std::vector<std::string> notes;
};

ApplicationClass classify(const ApplicationQuery& query);

/// E_{P^me_M}[Y | Z = z] for each z with positive P^me mass.
struct GuessTable {
  std::vector<Value> z_values;
  std::vector<Value> guesses;
};
GuessTable guess_table(const ApplicationQuery& query, const Measure& m);

struct Guess {
  Value value;
  ApplicationClass trust;
};

/// The guess with the query's classification attached. M must belong to
/// the query's family.
Guess guess(const ApplicationQuery& query, const Measure& m, std::span<const double> z);

/// LOSS(x, d) for every outcome and decision.
struct LossTable {
  std::vector<std::string> decisions;
  /// Outcome-major: loss[x * decisions.size() + d].
  std::vector<double> loss;
};

struct DecisionClass {
  std::string decision;
  ApplicationClass verdict;
};

/// Classifies psi_d(x) = LOSS(x, d) in place of Y, one decision at a time.
std::vector<DecisionClass> classify_losses(const ApplicationQuery& query, const LossTable& table);

}  // namespace maxent
