#include "maxent/information.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "maxent/errors.hpp"

namespace maxent {

double entropy(const Distribution& p, const Measure& m) {
  require_same_space(p.space(), m.space(), "entropy");
  double h = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] > 0.0) h += p[x] * std::log(m[x] / p[x]);
  }
  return h;
}

double log_loss(std::size_t x, const Distribution& q, const Measure& m) {
  require_same_space(q.space(), m.space(), "log_loss");
  require(x < q.size(), ErrorCode::InvalidArgument, "log_loss: outcome outside the space");
  if (q[x] <= 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(q[x] / m[x]);
}

double expected_log_loss(const Distribution& p, const Distribution& q, const Measure& m) {
  require_same_space(p.space(), q.space(), "expected_log_loss");
  require_same_space(p.space(), m.space(), "expected_log_loss");
  double loss = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] <= 0.0) continue;
    if (q[x] <= 0.0) return std::numeric_limits<double>::infinity();
    loss -= p[x] * std::log(q[x] / m[x]);
  }
  return loss;
}

Value expectation(const Distribution& p, const RandomVariable& psi) {
  require_same_space(p.space(), psi.space(), "expectation");
  Value e(psi.dim(), 0.0);
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    for (std::size_t i = 0; i < psi.dim(); ++i) e[i] += p[x] * psi.at(x, i);
  }
  return e;
}

Value conditional_expectation(const Distribution& p, const RandomVariable& y,
                              const RandomVariable& z, std::span<const double> z_value,
                              double tolerance) {
  require_same_space(p.space(), y.space(), "conditional_expectation");
  require_same_space(p.space(), z.space(), "conditional_expectation");
  const OutcomeSet cell = z.fiber(z_value, tolerance);
  require(!cell.empty(), ErrorCode::InvalidArgument,
          "conditional_expectation: value " + format_value(z_value) + " is not in range(Z)");
  const double mass = p.mass(cell);
  require(mass > 0.0, ErrorCode::ZeroProbabilityConditioning,
          "P(Z = " + format_value(z_value) + ") = 0");
  Value e(y.dim(), 0.0);
  for (std::size_t x : cell) {
    for (std::size_t i = 0; i < y.dim(); ++i) e[i] += p[x] * y.at(x, i);
  }
  for (double& v : e) v /= mass;
  return e;
}

std::optional<Value> DeterminationWitness::apply(std::span<const double> v,
                                                 double tolerance) const {
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (values_equal(domain[i], v, tolerance)) return image[i];
  }
  return std::nullopt;
}

DeterminationResult determines(const RandomVariable& phi, const RandomVariable& psi,
                               const OutcomeSet& subset, double tolerance) {
  require_same_space(phi.space(), psi.space(), "determines");
  DeterminationWitness g;
  std::vector<std::size_t> representative;
  for (std::size_t x : subset) {
    require(x < phi.size(), ErrorCode::InvalidArgument, "determines: subset outside the space");
    auto fx = phi.at(x);
    std::size_t j = 0;
    while (j < g.domain.size() && !values_equal(g.domain[j], fx, tolerance)) ++j;
    if (j == g.domain.size()) {
      g.domain.emplace_back(fx.begin(), fx.end());
      g.image.push_back(psi.value(x));
      representative.push_back(x);
    } else if (!values_equal(g.image[j], psi.at(x), tolerance)) {
      return {std::nullopt, std::make_pair(representative[j], x)};
    }
  }
  return {std::move(g), std::nullopt};
}

SpacePtr make_range_space(const std::vector<Value>& range) {
  std::vector<std::string> labels;
  std::set<std::string> used;
  for (const auto& v : range) {
    std::string l = format_value(v);
    // Values closer than the print precision but farther than the tolerance.
    for (int copy = 1; used.count(l); ++copy) l = format_value(v) + "#" + std::to_string(copy);
    used.insert(l);
    labels.push_back(std::move(l));
  }
  return make_space(std::move(labels));
}

RangeMeasure pushforward_measure(const Measure& m, const RandomVariable& phi) {
  require_same_space(m.space(), phi.space(), "pushforward_measure");
  auto range = phi.range();
  const auto fibers = phi.fiber_index();
  std::vector<double> w(range.size(), 0.0);
  for (std::size_t x = 0; x < fibers.size(); ++x) w[fibers[x]] += m[x];
  auto space = make_range_space(range);
  return {std::move(range), Measure(std::move(space), std::move(w))};
}

RangeDistribution pushforward(const Distribution& p, const RandomVariable& phi) {
  require_same_space(p.space(), phi.space(), "pushforward");
  auto range = phi.range();
  const auto fibers = phi.fiber_index();
  std::vector<double> w(range.size(), 0.0);
  for (std::size_t x = 0; x < fibers.size(); ++x) w[fibers[x]] += p[x];
  auto space = make_range_space(range);
  return {std::move(range), Distribution::normalized(std::move(space), std::move(w))};
}

MeasureFamily uniform_measure_on_range(const RandomVariable& phi) {
  const std::size_t r = phi.range().size();
  return MeasureFamily::compatible_with(phi, std::vector<double>(r, 1.0));
}

}  // namespace maxent
