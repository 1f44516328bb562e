#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "maxent/maxent.hpp"

namespace maxent::cli {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, std::size_t column,
             const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct VariableDef {
  std::string name;
  std::size_t dim = 1;
  std::vector<double> table;  // outcome-major

  bool operator==(const VariableDef&) const = default;
};

struct RowDef {
  std::string variable;
  std::optional<std::size_t> component;
  Relation relation = Relation::Equal;
  std::vector<double> target;

  bool operator==(const RowDef&) const = default;
};

struct ShiftDef {
  std::vector<std::string> underlying;
  std::vector<std::string> new_outcomes;
  std::optional<std::vector<double>> new_measure;
  std::vector<std::size_t> to_original;
  std::vector<std::size_t> to_new;
  std::vector<std::string> checks;

  bool operator==(const ShiftDef&) const = default;
};

enum class FamilyKind { Singleton, Uniform, All, Compatible };

struct QueryDef {
  std::string name;
  std::string y;
  std::optional<std::string> z;
  FamilyKind family = FamilyKind::Singleton;
  std::string coarsening;
  std::optional<std::vector<double>> reference;
  std::vector<std::string> candidates;

  bool operator==(const QueryDef&) const = default;
};

struct StrategyDef {
  std::string name;
  std::optional<std::vector<double>> weights;  // absent: the MaxEnt strategy over C

  bool operator==(const StrategyDef&) const = default;
};

struct KellyDef {
  std::vector<double> true_dist;
  std::vector<StrategyDef> strategies;
  std::size_t rounds = 1000;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  double capital = 1.0;

  bool operator==(const KellyDef&) const = default;
};

struct ProblemFile {
  std::vector<std::string> outcomes;
  std::optional<std::vector<double>> measure;
  std::vector<VariableDef> variables;
  std::vector<RowDef> constraints;
  std::vector<std::vector<RowDef>> branches;
  std::optional<ShiftDef> shift;
  std::vector<QueryDef> queries;
  std::optional<KellyDef> kelly;

  bool operator==(const ProblemFile&) const = default;
};

/// Throws ParseError carrying the 1-based line and column of the offending token.
ProblemFile parse_problem(std::string_view text, const std::string& source = "<input>");
ProblemFile load_problem(const std::string& path);

/// Canonical text form; parse_problem(serialize(f)) == f.
std::string serialize(const ProblemFile& file);

/// Library objects built from a parsed file.
class ProblemModel {
 public:
  ProblemModel(ProblemFile file, SolverConfig config = {});

  const ProblemFile& file() const noexcept { return file_; }
  const SpacePtr& space() const noexcept { return space_; }
  const Measure& measure() const noexcept { return measure_; }
  bool measure_is_default() const noexcept { return !file_.measure.has_value(); }
  const SolverConfig& config() const noexcept { return config_; }

  const RandomVariable& variable(const std::string& name) const;
  bool has_branches() const noexcept { return !file_.branches.empty(); }

  /// Throws Infeasible.
  ConstraintSet constraints() const;
  DisjunctiveConstraint disjunction() const;
  MaxEntProblem problem() const;
  RepresentationShift shift() const;
  ApplicationQuery query(std::size_t i) const;
  KellyConfig kelly() const;

 private:
  ConstraintSpec spec(const std::vector<RowDef>& rows) const;

  ProblemFile file_;
  SolverConfig config_;
  SpacePtr space_;
  Measure measure_;
  std::map<std::string, RandomVariable> variables_;
};

}  // namespace maxent::cli
