#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxent/constraints.hpp"
#include "maxent/measure.hpp"

namespace maxent {

/// Payoff per unit staked on x: b(x) = M(Omega) / M(x). Uniform odds give b = |Omega|.
double payoff(const Measure& odds, std::size_t x);

/// sum_x P*(x) ln(b(x) strategy(x)); -infinity when the strategy misses part
/// of P*'s support.
double expected_growth_rate(const Distribution& strategy, const Distribution& p_star,
                            const Measure& odds);

struct NamedStrategy {
  std::string name;
  Distribution weights;
};

struct KellyConfig {
  Measure odds;
  Distribution true_dist;
  std::vector<NamedStrategy> strategies;
  std::size_t rounds = 1;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  double initial_capital = 1.0;

  /// Throws InvalidArgument on an empty or inconsistent configuration.
  void validate() const;
};

struct KellyReport {
  std::vector<std::string> names;
  std::vector<double> expected_growth;
  /// final_log_capital[trial][strategy]; -infinity after ruin.
  std::vector<std::vector<double>> final_log_capital;
  /// win[a][b]: fraction of trials where a ends with strictly more capital than b.
  std::vector<std::vector<double>> win;
  std::vector<std::size_t> ruined;
  /// Mean over non-ruined trials of (log-capital - ln K) / n.
  std::vector<double> realized_growth_mean;
  /// Empirical standard deviation of the per-round log return.
  std::vector<double> per_round_stddev;
  /// first_separation[a][b]: the first round n0 such that a is strictly ahead
  /// of b in every trial at every round from n0 on; absent if never.
  std::vector<std::vector<std::optional<std::size_t>>> first_separation;
  /// epsilon[a][b]: min over trials of (L_a - L_b) / n at the last round.
  std::vector<std::vector<double>> epsilon;
};

/// Paired simulation: every strategy bets on the same outcome stream, and
/// trial t draws from substream t of the seed.
KellyReport simulate(const KellyConfig& config);

/// The outcome sequence of one trial, as simulate() draws it.
std::vector<std::size_t> draw_path(const KellyConfig& config, std::size_t trial);

/// P^me relative to the odds measure over C.
Distribution worst_case_growth_strategy(const ConstraintSet& c, const Measure& odds);

struct GrowthCheck {
  /// min_{P* in C} of the expected growth rate of P^me.
  double maxent_value = 0.0;
  /// The best such minimum among the perturbed strategies.
  double best_perturbed = 0.0;
  std::size_t perturbations = 0;
  std::size_t beaten_by = 0;
};

/// Worst-case growth of a strategy over C (an LP, attained at a vertex).
double worst_case_growth(const Distribution& strategy, const ConstraintSet& c, const Measure& odds);

/// Compares P^me against random perturbations of itself on worst-case growth.
GrowthCheck verify_worst_case_growth(const ConstraintSet& c, const Measure& odds,
                                     std::size_t perturbations = 100, std::uint64_t seed = 0);

}  // namespace maxent
