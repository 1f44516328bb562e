#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "maxent/constraints.hpp"
#include "maxent/errors.hpp"
#include "maxent/measure.hpp"

namespace maxent {

/// The tuple (Omega, M, C).
class MaxEntProblem {
 public:
  MaxEntProblem(Measure measure, ConstraintSet constraints);

  const SpacePtr& space() const noexcept { return measure_.space(); }
  const Measure& measure() const noexcept { return measure_; }
  const ConstraintSet& constraints() const noexcept { return constraints_; }
  const SolverConfig& config() const noexcept { return constraints_.config(); }

 private:
  Measure measure_;
  ConstraintSet constraints_;
};

enum class SolveMethod { Trivial, DualNewton, PrimalBarrier };

const char* to_string(SolveMethod m) noexcept;

struct MaxEntSolution {
  Distribution distribution;
  double entropy_value = 0.0;
  /// lambda_0..lambda_k with ln(P/M) = lambda_0 + sum_i lambda_i phi_i on the
  /// restricted support, phi running over ConstraintSet::rows().
  std::vector<double> dual;
  /// max |ln(P/M) - lambda_0 - lambda.phi| over the restricted support.
  double dual_residual = 0.0;
  OutcomeSet restricted_support;
  /// Largest constraint violation of `distribution`.
  double residual = 0.0;
  std::size_t iterations = 0;
  SolveMethod method = SolveMethod::Trivial;
};

/// Raised when the iteration caps are hit; carries the best iterate.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, Distribution best, double residual)
      : Error(ErrorCode::NonConvergence, what), best_(std::move(best)), residual_(residual) {}

  const Distribution& best_iterate() const noexcept { return best_; }
  double residual() const noexcept { return residual_; }

 private:
  Distribution best_;
  double residual_;
};

/// argmax_{P in C} H_M(P).
///
/// Restricts to SUPP(C), then runs damped Newton on the dual when every row is
/// an equality. Inequality rows, lifted (hull) sets and dual failures go
/// through a primal log-barrier Newton path instead.
MaxEntSolution solve_maxent(const MaxEntProblem& problem);

/// MaxEnt over conv(union), checked a posteriori to be the minimax strategy
/// over the union. Throws VerificationFailed when the check fails.
MaxEntSolution solve_minimax_union(const DisjunctiveConstraint& d, const Measure& m);

struct MaximinDetail {
  std::vector<MaxEntSolution> branches;
  std::size_t chosen = 0;
};

/// Per-branch MaxEnt; the highest-entropy branch wins, ties to the lowest index.
MaxEntSolution naive_maximin_union(const DisjunctiveConstraint& d, const Measure& m);
MaximinDetail naive_maximin_detail(const DisjunctiveConstraint& d, const Measure& m);

}  // namespace maxent
