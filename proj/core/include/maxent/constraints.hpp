#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "maxent/config.hpp"
#include "maxent/lp.hpp"
#include "maxent/measure.hpp"
#include "maxent/space.hpp"

namespace maxent {

enum class Relation { Equal, AtLeast };

const char* to_string(Relation r) noexcept;

/// E[phi] = t row by row; rows flagged AtLeast read E[phi_i] >= t_i.
class ConstraintSpec {
 public:
  ConstraintSpec(RandomVariable phi, std::vector<double> target,
                 std::vector<Relation> relations = {});

  /// phi = 0, t = 0: the empty constraint.
  static ConstraintSpec none(SpacePtr space);

  const RandomVariable& phi() const noexcept { return phi_; }
  const std::vector<double>& target() const noexcept { return target_; }
  const std::vector<Relation>& relations() const noexcept { return relations_; }
  const SpacePtr& space() const noexcept { return phi_.space(); }
  std::size_t dim() const noexcept { return phi_.dim(); }
  bool has_inequalities() const noexcept;

 private:
  RandomVariable phi_;
  std::vector<double> target_;
  std::vector<Relation> relations_;
};

/// Conditioning event Z = z folded in as the row E[1_{Z=z}] = 1.
struct Conditioning {
  RandomVariable z;
  Value value;
};

/// One linear row over the outcomes.
struct MomentRow {
  std::vector<double> coeffs;
  Relation relation = Relation::Equal;
  double target = 0.0;
};

/// Rows over (outcomes, auxiliary variables) describing a polytope in a
/// lifted space; its projection onto the outcomes is the constraint set.
struct LiftedBlock {
  std::size_t aux = 0;
  StandardForm rows;  // cols = outcomes + aux
};

struct Support {
  OutcomeSet outcomes;
  /// Inside the support: the largest P(x) seen on a visited LP vertex, a
  /// witnessed lower bound on max_{P in C} P(x). Outside: an LP upper bound
  /// on that maximum, at most the support tolerance.
  std::vector<double> max_probability;

  bool contains(std::size_t x) const;
};

/// LP-derived facts about the standard-form polytope, computed once per set.
struct PolytopeGeometry {
  /// Per standard-form variable: an LP upper bound on its maximum when that is
  /// at most the support tolerance, otherwise the largest value seen on a
  /// visited vertex.
  std::vector<double> var_max;
  /// Average of the visited vertices: strictly positive on every variable
  /// with var_max above the support tolerance.
  std::vector<double> interior;
};

/// The convex set C of distributions satisfying a ConstraintSpec, optional
/// conditioning rows and, for hulls, a lifted block. Construction proves the
/// set is non-empty; copies share the LP state and lazily computed geometry.
class ConstraintSet {
 public:
  /// Throws Infeasible when no distribution satisfies the rows.
  static ConstraintSet create(ConstraintSpec spec, const SolverConfig& config = {});
  static ConstraintSet unconstrained(SpacePtr space, const SolverConfig& config = {});
  static ConstraintSet lifted(SpacePtr space, LiftedBlock block, const SolverConfig& config = {});

  const SpacePtr& space() const noexcept { return spec_.space(); }
  std::size_t size() const noexcept { return space()->size(); }
  const ConstraintSpec& spec() const noexcept { return spec_; }
  const std::vector<Conditioning>& conditioning() const noexcept { return conditioning_; }
  bool is_lifted() const noexcept { return lifted_ != nullptr; }
  bool has_inequalities() const noexcept { return spec_.has_inequalities(); }
  const SolverConfig& config() const noexcept { return config_; }

  /// Spec rows followed by conditioning rows.
  std::vector<MomentRow> rows() const;

  /// Variables: outcomes, lifted aux, then one slack per AtLeast row.
  const StandardForm& standard_form() const;
  const Simplex& simplex() const;
  const PolytopeGeometry& geometry() const;

  /// Membership within `tolerance` (defaults to config().membership_tolerance).
  bool contains(const Distribution& p, double tolerance = -1.0) const;
  /// Largest row violation of p (lifted sets: phase-1 infeasibility).
  double violation(const Distribution& p) const;

  ConstraintSet with_condition(const RandomVariable& z, std::span<const double> value) const;

 private:
  struct State;
  ConstraintSet(ConstraintSpec spec, std::vector<Conditioning> conditioning,
                std::shared_ptr<const LiftedBlock> lifted, SolverConfig config);

  ConstraintSpec spec_;
  std::vector<Conditioning> conditioning_;
  std::shared_ptr<const LiftedBlock> lifted_;
  SolverConfig config_;
  std::shared_ptr<State> state_;
};

/// A finite union of constraint sets over one space.
class DisjunctiveConstraint {
 public:
  explicit DisjunctiveConstraint(std::vector<ConstraintSet> branches);
  /// Builds each branch, skipping infeasible ones; throws Infeasible if none remain.
  static DisjunctiveConstraint from_specs(const std::vector<ConstraintSpec>& specs,
                                          const SolverConfig& config = {});

  const std::vector<ConstraintSet>& branches() const noexcept { return branches_; }
  /// Indices (into the original spec list) dropped as infeasible.
  const std::vector<std::size_t>& skipped() const noexcept { return skipped_; }
  const SpacePtr& space() const { return branches_.front().space(); }

 private:
  std::vector<ConstraintSet> branches_;
  std::vector<std::size_t> skipped_;
};

struct LpExtremum {
  double value;
  Distribution optimizer;
};

/// Optimum of sum_x c(x) P(x) over C, attained at a vertex.
LpExtremum lp_extremize(const ConstraintSet& c, std::span<const double> coeffs, Sense sense);

Support support(const ConstraintSet& c);

/// C^(z) = C with E[1_{Z=z}] = 1 appended. Throws Infeasible.
ConstraintSet condition(const ConstraintSet& c, const RandomVariable& z,
                        std::span<const double> value);

/// conv(union of branches) in lifted mixture form.
ConstraintSet convex_hull(const DisjunctiveConstraint& d);

}  // namespace maxent
