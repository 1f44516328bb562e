#include "maxent/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "maxent/errors.hpp"

namespace maxent {

OutcomeSpace::OutcomeSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  require(!labels_.empty(), ErrorCode::InvalidArgument, "outcome space must be non-empty");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    require(seen.insert(l).second, ErrorCode::InvalidArgument,
            "duplicate outcome label '" + l + "'");
  }
}

std::optional<std::size_t> OutcomeSpace::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

SpacePtr make_space(std::vector<std::string> labels) {
  return std::make_shared<const OutcomeSpace>(std::move(labels));
}

SpacePtr make_numbered_space(std::size_t n, std::size_t first) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(first + i));
  return make_space(std::move(labels));
}

bool same_space(const SpacePtr& a, const SpacePtr& b) noexcept {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* where) {
  require(same_space(a, b), ErrorCode::SpaceMismatch,
          std::string(where) + ": operands live on different outcome spaces");
}

OutcomeSet full_set(std::size_t n) {
  OutcomeSet s(n);
  std::iota(s.begin(), s.end(), std::size_t{0});
  return s;
}

bool values_equal(std::span<const double> a, std::span<const double> b,
                  double tolerance) noexcept {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(std::fabs(a[i] - b[i]) <= tolerance)) return false;
  }
  return true;
}

std::string format_value(std::span<const double> v) {
  std::ostringstream os;
  os.precision(12);
  if (v.size() == 1) {
    os << v[0];
    return os.str();
  }
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

RandomVariable::RandomVariable(SpacePtr space, std::size_t dim, std::vector<double> table)
    : space_(std::move(space)), dim_(dim), table_(std::move(table)) {
  require(space_ != nullptr, ErrorCode::InvalidArgument, "random variable needs a space");
  require(dim_ >= 1, ErrorCode::InvalidArgument, "random variable dimension must be >= 1");
  require(table_.size() == space_->size() * dim_, ErrorCode::InvalidArgument,
          "random variable table must hold one value vector per outcome");
  for (double v : table_) {
    require(std::isfinite(v), ErrorCode::InvalidArgument, "random variable values must be finite");
  }
}

RandomVariable RandomVariable::scalar(SpacePtr space, std::vector<double> values) {
  return RandomVariable(std::move(space), 1, std::move(values));
}

RandomVariable RandomVariable::constant(SpacePtr space, double c, std::size_t dim) {
  const std::size_t n = space->size();
  return RandomVariable(std::move(space), dim, std::vector<double>(n * dim, c));
}

RandomVariable RandomVariable::indicator(SpacePtr space, const OutcomeSet& event) {
  std::vector<double> v(space->size(), 0.0);
  for (std::size_t x : event) {
    require(x < v.size(), ErrorCode::InvalidArgument, "indicator event outside the space");
    v[x] = 1.0;
  }
  return scalar(std::move(space), std::move(v));
}

RandomVariable RandomVariable::outcome_index(SpacePtr space) {
  std::vector<double> v(space->size());
  std::iota(v.begin(), v.end(), 0.0);
  return scalar(std::move(space), std::move(v));
}

RandomVariable RandomVariable::stack(const std::vector<RandomVariable>& parts) {
  require(!parts.empty(), ErrorCode::InvalidArgument, "stack needs at least one variable");
  const auto& space = parts.front().space();
  std::size_t dim = 0;
  for (const auto& p : parts) {
    require_same_space(space, p.space(), "RandomVariable::stack");
    dim += p.dim();
  }
  std::vector<double> table;
  table.reserve(space->size() * dim);
  for (std::size_t x = 0; x < space->size(); ++x) {
    for (const auto& p : parts) {
      auto v = p.at(x);
      table.insert(table.end(), v.begin(), v.end());
    }
  }
  return RandomVariable(space, dim, std::move(table));
}

Value RandomVariable::value(std::size_t x) const {
  auto v = at(x);
  return Value(v.begin(), v.end());
}

RandomVariable RandomVariable::component(std::size_t i) const {
  require(i < dim_, ErrorCode::InvalidArgument, "component index out of range");
  std::vector<double> v(size());
  for (std::size_t x = 0; x < size(); ++x) v[x] = at(x, i);
  return scalar(space_, std::move(v));
}

RandomVariable RandomVariable::indicator_of(std::span<const double> z, double tolerance) const {
  return indicator(space_, fiber(z, tolerance));
}

std::vector<Value> RandomVariable::range(double tolerance) const {
  std::vector<Value> out;
  for (std::size_t x = 0; x < size(); ++x) {
    auto v = at(x);
    bool found = std::any_of(out.begin(), out.end(),
                             [&](const Value& r) { return values_equal(r, v, tolerance); });
    if (!found) out.emplace_back(v.begin(), v.end());
  }
  return out;
}

std::vector<std::size_t> RandomVariable::fiber_index(double tolerance) const {
  std::vector<Value> seen;
  std::vector<std::size_t> idx(size());
  for (std::size_t x = 0; x < size(); ++x) {
    auto v = at(x);
    std::size_t j = 0;
    while (j < seen.size() && !values_equal(seen[j], v, tolerance)) ++j;
    if (j == seen.size()) seen.emplace_back(v.begin(), v.end());
    idx[x] = j;
  }
  return idx;
}

OutcomeSet RandomVariable::fiber(std::span<const double> z, double tolerance) const {
  OutcomeSet s;
  for (std::size_t x = 0; x < size(); ++x) {
    if (values_equal(at(x), z, tolerance)) s.push_back(x);
  }
  return s;
}

bool RandomVariable::is_constant_on(const OutcomeSet& subset, double tolerance) const {
  if (subset.empty()) return true;
  auto first = at(subset.front());
  return std::all_of(subset.begin(), subset.end(),
                     [&](std::size_t x) { return values_equal(at(x), first, tolerance); });
}

}  // namespace maxent
