#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maxent/measure.hpp"
#include "maxent/solver.hpp"
#include "maxent/space.hpp"

namespace maxent {

/// (Omega_V, Omega_W, M_W) with the surjections h: V -> X and W_V: V -> W,
/// stored as index maps over Omega_V.
class RepresentationShift {
 public:
  RepresentationShift(SpacePtr underlying, SpacePtr original, SpacePtr new_space,
                      std::vector<std::size_t> to_original, std::vector<std::size_t> to_new,
                      std::optional<Measure> new_measure = std::nullopt);

  /// Omega_V = Omega_W = Omega_X with identity maps and M_W = M.
  static RepresentationShift identity(const Measure& m);

  const SpacePtr& underlying() const noexcept { return underlying_; }
  const SpacePtr& original() const noexcept { return original_; }
  const SpacePtr& new_space() const noexcept { return new_space_; }
  const std::vector<std::size_t>& to_original() const noexcept { return to_original_; }
  const std::vector<std::size_t>& to_new() const noexcept { return to_new_; }
  const std::optional<Measure>& new_measure() const noexcept { return new_measure_; }

  /// h and W_V as random variables on Omega_V valued in outcome indices.
  RandomVariable original_variable() const;
  RandomVariable new_variable() const;
  /// f o h: pulls a variable on Omega_X back to Omega_V.
  RandomVariable pull_back(const RandomVariable& f) const;

 private:
  SpacePtr underlying_;
  SpacePtr original_;
  SpacePtr new_space_;
  std::vector<std::size_t> to_original_;
  std::vector<std::size_t> to_new_;
  std::optional<Measure> new_measure_;
};

struct ShiftVerdict {
  bool valid = false;
  bool original_surjective = false;
  bool new_surjective = false;
  /// Outcomes v, v' of Omega_V mapped to one w but with different constraint rows.
  std::optional<std::pair<std::size_t, std::size_t>> determination_counterexample;
  /// Absent when the shift carries no M_W.
  std::optional<bool> measures_compatible;
  /// Largest s such that some compatible M_V has every weight >= s.
  double compatibility_margin = 0.0;
  /// A strictly positive M_V pushing forward to both measures, when found.
  std::optional<Measure> underlying_measure;
  std::string reason;
};

ShiftVerdict validate_shift(const RepresentationShift& shift, const MaxEntProblem& problem);

/// (Omega_W, M_W, phi_W, C_W). Throws InvalidShift when the shift fails
/// validation or has no M_W; the second overload supplies M_W explicitly.
MaxEntProblem induce_problem(const RepresentationShift& shift, const MaxEntProblem& problem);
MaxEntProblem induce_problem(const RepresentationShift& shift, const MaxEntProblem& problem,
                             const Measure& new_measure);

struct InvarianceRow {
  Value y;
  double original = 0.0;
  double shifted = 0.0;
};

struct InvarianceReport {
  std::vector<InvarianceRow> rows;
  double max_discrepancy = 0.0;
};

/// Solves both problems and compares P(Y = y). Throws
/// YNotExpressibleInNewSpace when W_V does not determine Y o h.
InvarianceReport check_invariance(const RepresentationShift& shift, const MaxEntProblem& problem,
                                  const RandomVariable& y);

/// Splits outcome x into M(x) d copies, d the common denominator of the
/// weights, and gives each copy weight 1/d. Throws IrrationalWeights when a
/// weight has no rational form with denominator <= max_denominator, and
/// DenominatorOverflow when d exceeds it.
RepresentationShift measure_to_uniform_space(const Measure& m, const MaxEntProblem& problem,
                                             long max_denominator = 10000);

/// p / q with q <= max_denominator and |x - p/q| <= tolerance, if one exists.
std::optional<std::pair<long, long>> rational_approximation(double x, long max_denominator,
                                                            double tolerance = 1e-12);

namespace experimental {

/// Does some measure on the common base space of y and z push forward to
/// `y_weights` (over y.range()) and `z_weights` (over z.range())? Returns one
/// such joint when it exists. Nonnegative weights; strict positivity is not
/// enforced.
std::optional<std::vector<double>> joint_with_marginals(const RandomVariable& y,
                                                        const std::vector<double>& y_weights,
                                                        const RandomVariable& z,
                                                        const std::vector<double>& z_weights);

}  // namespace experimental

}  // namespace maxent
