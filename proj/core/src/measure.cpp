#include "maxent/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maxent/errors.hpp"

namespace maxent {

namespace {

constexpr double kSumTolerance = 1e-12;

}  // namespace

Measure::Measure(SpacePtr space, std::vector<double> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  require(space_ != nullptr, ErrorCode::InvalidArgument, "measure needs a space");
  require(weights_.size() == space_->size(), ErrorCode::InvalidArgument,
          "measure must have one weight per outcome");
  for (double w : weights_) {
    require(std::isfinite(w) && w > 0.0, ErrorCode::InvalidArgument,
            "measure weights must be finite and strictly positive");
  }
  total_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

Measure Measure::uniform(SpacePtr space, double weight) {
  const std::size_t n = space->size();
  return Measure(std::move(space), std::vector<double>(n, weight));
}

double Measure::mass(const OutcomeSet& event) const {
  double m = 0.0;
  for (std::size_t x : event) m += weights_.at(x);
  return m;
}

Measure Measure::scaled(double c) const {
  std::vector<double> w = weights_;
  for (double& v : w) v *= c;
  return Measure(space_, std::move(w));
}

Distribution::Distribution(SpacePtr space, std::vector<double> probs)
    : space_(std::move(space)), probs_(std::move(probs)) {
  require(space_ != nullptr, ErrorCode::InvalidArgument, "distribution needs a space");
  require(probs_.size() == space_->size(), ErrorCode::InvalidArgument,
          "distribution must have one probability per outcome");
  double sum = 0.0;
  for (double p : probs_) {
    require(std::isfinite(p) && p >= 0.0, ErrorCode::InvalidArgument,
            "probabilities must be finite and non-negative");
    sum += p;
  }
  require(std::fabs(sum - 1.0) <= kSumTolerance, ErrorCode::InvalidArgument,
          "probabilities must sum to 1");
}

Distribution Distribution::uniform(SpacePtr space) {
  const std::size_t n = space->size();
  return normalized(std::move(space), std::vector<double>(n, 1.0));
}

Distribution Distribution::point_mass(SpacePtr space, std::size_t x) {
  std::vector<double> p(space->size(), 0.0);
  p.at(x) = 1.0;
  return Distribution(std::move(space), std::move(p));
}

Distribution Distribution::normalized(SpacePtr space, std::vector<double> weights) {
  double sum = 0.0;
  for (double& w : weights) {
    require(std::isfinite(w), ErrorCode::InvalidArgument, "weights must be finite");
    if (w < 0.0) w = 0.0;
    sum += w;
  }
  require(sum > 0.0, ErrorCode::InvalidArgument, "cannot normalize zero weights");
  for (double& w : weights) w /= sum;
  // One more pass absorbs the rounding of the first division.
  sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= sum;
  return Distribution(std::move(space), std::move(weights));
}

Distribution Distribution::from_measure(const Measure& m) {
  return normalized(m.space(), m.weights());
}

double Distribution::mass(const OutcomeSet& event) const {
  double m = 0.0;
  for (std::size_t x : event) m += probs_.at(x);
  return m;
}

OutcomeSet Distribution::support() const {
  OutcomeSet s;
  for (std::size_t x = 0; x < probs_.size(); ++x) {
    if (probs_[x] > 0.0) s.push_back(x);
  }
  return s;
}

double total_variation(const Distribution& p, const Distribution& q) {
  require_same_space(p.space(), q.space(), "total_variation");
  double d = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) d += std::fabs(p[x] - q[x]);
  return 0.5 * d;
}

double max_abs_difference(const Distribution& p, const Distribution& q) {
  require_same_space(p.space(), q.space(), "max_abs_difference");
  double d = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) d = std::max(d, std::fabs(p[x] - q[x]));
  return d;
}

MeasureFamily::MeasureFamily(Kind kind) : kind_(std::move(kind)) {
  if (auto* c = std::get_if<CompatibleWith>(&kind_)) {
    const auto range = c->coarsening.range();
    require(c->reference.size() == range.size(), ErrorCode::InvalidArgument,
            "reference measure needs one weight per element of the coarsening range");
    for (double w : c->reference) {
      require(std::isfinite(w) && w > 0.0, ErrorCode::InvalidArgument,
              "reference weights must be strictly positive");
    }
  }
}

MeasureFamily MeasureFamily::compatible_with(RandomVariable coarsening,
                                             std::vector<double> reference) {
  return MeasureFamily(CompatibleWith{std::move(coarsening), std::move(reference)});
}

const SpacePtr& MeasureFamily::space() const {
  return std::visit(
      [](const auto& k) -> const SpacePtr& {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Singleton>) {
          return k.measure.space();
        } else if constexpr (std::is_same_v<T, CompatibleWith>) {
          return k.coarsening.space();
        } else {
          return k.space;
        }
      },
      kind_);
}

bool MeasureFamily::is_single() const noexcept {
  return std::holds_alternative<Singleton>(kind_) || std::holds_alternative<UniformOnBase>(kind_);
}

const char* MeasureFamily::kind_name() const noexcept {
  switch (kind_.index()) {
    case 0: return "singleton";
    case 1: return "uniform-on-base";
    case 2: return "all-measures";
    default: return "compatible-with";
  }
}

Measure MeasureFamily::representative() const {
  if (auto* s = std::get_if<Singleton>(&kind_)) return s->measure;
  if (auto* c = std::get_if<CompatibleWith>(&kind_)) {
    const auto fibers = c->coarsening.fiber_index();
    std::vector<std::size_t> count(c->reference.size(), 0);
    for (std::size_t f : fibers) ++count[f];
    std::vector<double> w(fibers.size());
    for (std::size_t x = 0; x < fibers.size(); ++x) {
      w[x] = c->reference[fibers[x]] / static_cast<double>(count[fibers[x]]);
    }
    return Measure(c->coarsening.space(), std::move(w));
  }
  return Measure::uniform(space());
}

bool MeasureFamily::contains(const Measure& m, double tolerance) const {
  if (!same_space(m.space(), space())) return false;
  if (auto* s = std::get_if<Singleton>(&kind_)) {
    for (std::size_t x = 0; x < m.size(); ++x) {
      if (std::fabs(m[x] - s->measure[x]) > tolerance) return false;
    }
    return true;
  }
  if (std::holds_alternative<UniformOnBase>(kind_)) {
    return std::all_of(m.weights().begin(), m.weights().end(),
                       [&](double w) { return std::fabs(w - 1.0) <= tolerance; });
  }
  if (std::holds_alternative<AllMeasures>(kind_)) return true;
  const auto& c = std::get<CompatibleWith>(kind_);
  const auto fibers = c.coarsening.fiber_index();
  std::vector<double> push(c.reference.size(), 0.0);
  for (std::size_t x = 0; x < fibers.size(); ++x) push[fibers[x]] += m[x];
  for (std::size_t f = 0; f < push.size(); ++f) {
    if (std::fabs(push[f] - c.reference[f]) > tolerance * std::max(1.0, c.reference[f])) {
      return false;
    }
  }
  return true;
}

Measure MeasureFamily::sample(Rng& rng) const {
  if (is_single()) return representative();
  if (std::holds_alternative<AllMeasures>(kind_)) {
    std::vector<double> w(space()->size());
    // Log-uniform over two decades around 1.
    for (double& v : w) v = std::exp(rng.uniform(-std::log(10.0), std::log(10.0)));
    return Measure(space(), std::move(w));
  }
  const auto& c = std::get<CompatibleWith>(kind_);
  const auto fibers = c.coarsening.fiber_index();
  std::vector<double> draw(fibers.size());
  std::vector<double> fiber_sum(c.reference.size(), 0.0);
  for (std::size_t x = 0; x < fibers.size(); ++x) {
    draw[x] = rng.exponential();
    fiber_sum[fibers[x]] += draw[x];
  }
  // Dirichlet(1,...,1) split of each reference weight over its fiber.
  std::vector<double> w(fibers.size());
  for (std::size_t x = 0; x < fibers.size(); ++x) {
    w[x] = c.reference[fibers[x]] * draw[x] / fiber_sum[fibers[x]];
  }
  return Measure(space(), std::move(w));
}

}  // namespace maxent
