#pragma once

#include <cstddef>
#include <vector>

#include "maxent/constraints.hpp"
#include "maxent/measure.hpp"
#include "maxent/solver.hpp"

namespace maxent {

struct WorstCase {
  /// sup_{P* in C} E_{P*}[-ln(Q/M)]; +infinity when Q misses part of SUPP(C).
  double value;
  Distribution witness;
};

WorstCase worst_case_loss(const Distribution& q, const ConstraintSet& c, const Measure& m);

/// Maximizers and minimizers of every coordinate P(x) over C.
std::vector<Distribution> vertex_probes(const ConstraintSet& c);

struct SaddleReport {
  double maximin = 0.0;
  double minimax = 0.0;
  double gap = 0.0;
  /// max - min of E_{P*}[-ln(P^me/M)] over the probed vertices.
  double equalizer_spread = 0.0;
  Distribution worst_case_witness;
  MaxEntSolution solution;
  std::size_t vertices = 0;
};

/// Computes both values of the log-loss game at P^me. The spread is taken over
/// the coordinate vertices plus the two extremizers of the loss functional
/// itself, so it equals the spread over all of C.
SaddleReport verify_saddle(const MaxEntProblem& problem);

/// The game over a finite union of constraint sets, which need not be convex.
struct UnionSaddleReport {
  /// max over branches of the branch MaxEnt entropy (Nature's best guaranteed value).
  double maximin = 0.0;
  /// Worst-case loss over the union of the hull MaxEnt strategy.
  double minimax = 0.0;
  double gap = 0.0;
  MaxEntSolution minimax_solution;
  MaxEntSolution naive_solution;
  std::size_t naive_branch = 0;
  double naive_worst_case = 0.0;
  std::vector<double> branch_entropies;
  /// Whether the hull solution passed the minimax check.
  bool hull_verified = false;
};

UnionSaddleReport verify_saddle(const DisjunctiveConstraint& d, const Measure& m);

/// max over probes of |E_{P*}[-ln(P^me/M)] - H_M(P^me)|. Every probe must lie
/// in C (ProbeOutsideConstraintSet otherwise).
double equalizer_residual(const MaxEntProblem& problem, const std::vector<Distribution>& probes);
double equalizer_residual(const MaxEntProblem& problem, const MaxEntSolution& solution,
                          const std::vector<Distribution>& probes);

}  // namespace maxent
