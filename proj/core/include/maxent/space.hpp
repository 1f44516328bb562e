#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace maxent {

/// A finite sample space. Outcome indices 0..size()-1 are the canonical
/// encoding used by every other type.
class OutcomeSpace {
 public:
  explicit OutcomeSpace(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(std::size_t x) const { return labels_.at(x); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  bool operator==(const OutcomeSpace&) const = default;

 private:
  std::vector<std::string> labels_;
};

using SpacePtr = std::shared_ptr<const OutcomeSpace>;

SpacePtr make_space(std::vector<std::string> labels);
/// Space with labels "1".."n".
SpacePtr make_numbered_space(std::size_t n, std::size_t first = 1);

/// True when both pointers denote the same space (identity or equal labels).
bool same_space(const SpacePtr& a, const SpacePtr& b) noexcept;
void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* where);

/// Sorted list of outcome indices.
using OutcomeSet = std::vector<std::size_t>;

OutcomeSet full_set(std::size_t n);

/// A point of R^k.
using Value = std::vector<double>;

bool values_equal(std::span<const double> a, std::span<const double> b,
                  double tolerance = 1e-9) noexcept;
std::string format_value(std::span<const double> v);

/// A function from a space to R^k, stored as a dense outcome-major table.
class RandomVariable {
 public:
  RandomVariable(SpacePtr space, std::size_t dim, std::vector<double> table);

  static RandomVariable scalar(SpacePtr space, std::vector<double> values);
  static RandomVariable constant(SpacePtr space, double c = 0.0, std::size_t dim = 1);
  static RandomVariable indicator(SpacePtr space, const OutcomeSet& event);
  /// X itself, encoded as the outcome index.
  static RandomVariable outcome_index(SpacePtr space);
  /// Stacks the components of several variables on the same space.
  static RandomVariable stack(const std::vector<RandomVariable>& parts);

  const SpacePtr& space() const noexcept { return space_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return space_->size(); }

  std::span<const double> at(std::size_t x) const {
    return {table_.data() + x * dim_, dim_};
  }
  double at(std::size_t x, std::size_t component) const {
    return table_[x * dim_ + component];
  }
  Value value(std::size_t x) const;
  const std::vector<double>& table() const noexcept { return table_; }

  RandomVariable component(std::size_t i) const;
  /// 1_{this = z} as a scalar variable.
  RandomVariable indicator_of(std::span<const double> z, double tolerance = 1e-9) const;

  /// Distinct values in order of first appearance.
  std::vector<Value> range(double tolerance = 1e-9) const;
  /// For each outcome, the index of its value in range().
  std::vector<std::size_t> fiber_index(double tolerance = 1e-9) const;
  /// Outcomes x with this(x) = z.
  OutcomeSet fiber(std::span<const double> z, double tolerance = 1e-9) const;
  bool is_constant_on(const OutcomeSet& subset, double tolerance = 1e-9) const;

 private:
  SpacePtr space_;
  std::size_t dim_;
  std::vector<double> table_;
};

}  // namespace maxent
