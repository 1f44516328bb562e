#include "maxent/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "maxent/errors.hpp"

namespace maxent {

const char* to_string(Relation r) noexcept { return r == Relation::Equal ? "=" : ">="; }

ConstraintSpec::ConstraintSpec(RandomVariable phi, std::vector<double> target,
                               std::vector<Relation> relations)
    : phi_(std::move(phi)), target_(std::move(target)), relations_(std::move(relations)) {
  require(target_.size() == phi_.dim(), ErrorCode::InvalidArgument,
          "constraint target must have one entry per component of phi");
  if (relations_.empty()) relations_.assign(phi_.dim(), Relation::Equal);
  require(relations_.size() == phi_.dim(), ErrorCode::InvalidArgument,
          "constraint relations must have one entry per component of phi");
  for (double t : target_) {
    require(std::isfinite(t), ErrorCode::InvalidArgument, "constraint targets must be finite");
  }
}

ConstraintSpec ConstraintSpec::none(SpacePtr space) {
  return ConstraintSpec(RandomVariable::constant(std::move(space), 0.0), {0.0});
}

bool ConstraintSpec::has_inequalities() const noexcept {
  return std::any_of(relations_.begin(), relations_.end(),
                     [](Relation r) { return r == Relation::AtLeast; });
}

bool Support::contains(std::size_t x) const {
  return std::binary_search(outcomes.begin(), outcomes.end(), x);
}

struct ConstraintSet::State {
  StandardForm form;
  std::unique_ptr<Simplex> simplex;
  std::once_flag geometry_once;
  PolytopeGeometry geometry;
};

ConstraintSet::ConstraintSet(ConstraintSpec spec, std::vector<Conditioning> conditioning,
                             std::shared_ptr<const LiftedBlock> lifted, SolverConfig config)
    : spec_(std::move(spec)),
      conditioning_(std::move(conditioning)),
      lifted_(std::move(lifted)),
      config_(config),
      state_(std::make_shared<State>()) {
  const std::size_t n = size();
  const std::size_t aux = lifted_ ? lifted_->aux : 0;
  const auto moment = rows();

  StandardForm& f = state_->form;
  f = StandardForm(0, n + aux);
  const std::size_t norm = f.add_row(1.0);
  for (std::size_t x = 0; x < n; ++x) f(norm, x) = 1.0;

  std::vector<std::size_t> slack_rows;
  for (const auto& row : moment) {
    const std::size_t r = f.add_row(row.target);
    for (std::size_t x = 0; x < n; ++x) f(r, x) = row.coeffs[x];
    if (row.relation == Relation::AtLeast) slack_rows.push_back(r);
  }
  if (lifted_) {
    require(lifted_->rows.cols == n + aux, ErrorCode::InvalidArgument,
            "lifted block has the wrong column count");
    for (std::size_t i = 0; i < lifted_->rows.rows; ++i) {
      const std::size_t r = f.add_row(lifted_->rows.b[i]);
      for (std::size_t c = 0; c < n + aux; ++c) f(r, c) = lifted_->rows(i, c);
    }
  }
  for (std::size_t r : slack_rows) {
    const std::size_t c = f.add_col();
    f(r, c) = -1.0;
  }

  state_->simplex = std::make_unique<Simplex>(f, config_.lp_pivot_tolerance,
                                              config_.lp_feasibility_tolerance);
  require(state_->simplex->feasible(), ErrorCode::Infeasible,
          "constraint set is empty (phase-1 infeasibility " +
              std::to_string(state_->simplex->infeasibility()) + ")");
}

ConstraintSet ConstraintSet::create(ConstraintSpec spec, const SolverConfig& config) {
  return ConstraintSet(std::move(spec), {}, nullptr, config);
}

ConstraintSet ConstraintSet::unconstrained(SpacePtr space, const SolverConfig& config) {
  return create(ConstraintSpec::none(std::move(space)), config);
}

ConstraintSet ConstraintSet::lifted(SpacePtr space, LiftedBlock block, const SolverConfig& config) {
  return ConstraintSet(ConstraintSpec::none(std::move(space)), {},
                       std::make_shared<const LiftedBlock>(std::move(block)), config);
}

std::vector<MomentRow> ConstraintSet::rows() const {
  std::vector<MomentRow> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < spec_.dim(); ++i) {
    MomentRow row;
    row.coeffs.resize(n);
    for (std::size_t x = 0; x < n; ++x) row.coeffs[x] = spec_.phi().at(x, i);
    row.relation = spec_.relations()[i];
    row.target = spec_.target()[i];
    out.push_back(std::move(row));
  }
  for (const auto& c : conditioning_) {
    MomentRow row;
    row.coeffs.assign(n, 0.0);
    for (std::size_t x : c.z.fiber(c.value, config_.value_tolerance)) row.coeffs[x] = 1.0;
    row.target = 1.0;
    out.push_back(std::move(row));
  }
  return out;
}

const StandardForm& ConstraintSet::standard_form() const { return state_->form; }

const Simplex& ConstraintSet::simplex() const { return *state_->simplex; }

const PolytopeGeometry& ConstraintSet::geometry() const {
  std::call_once(state_->geometry_once, [this] {
    const Simplex& lp = *state_->simplex;
    const std::size_t cols = lp.cols();
    const double tol = config_.support_tolerance;
    PolytopeGeometry g;
    g.var_max.assign(cols, 0.0);
    g.interior.assign(cols, 0.0);
    std::vector<bool> certified(cols, false);
    std::size_t used = 0;
    auto record = [&](const std::vector<double>& vertex) {
      for (std::size_t i = 0; i < cols; ++i) {
        g.interior[i] += vertex[i];
        g.var_max[i] = std::max(g.var_max[i], vertex[i]);
        if (vertex[i] > tol) certified[i] = true;
      }
      ++used;
    };
    record(lp.initial_vertex());
    // Maximize the total of the uncertified coordinates: a positive optimum
    // certifies at least one more variable, a vanishing one bounds them all.
    std::vector<double> c(cols, 0.0);
    while (true) {
      bool any = false;
      for (std::size_t j = 0; j < cols; ++j) {
        c[j] = certified[j] ? 0.0 : 1.0;
        any = any || !certified[j];
      }
      if (!any) break;
      const LpSolution sol = lp.optimize(c, Sense::Maximize);
      if (sol.value <= tol) {
        for (std::size_t j = 0; j < cols; ++j) {
          if (!certified[j]) g.var_max[j] = std::max(g.var_max[j], sol.value);
        }
        break;
      }
      record(sol.x);
    }
    for (double& v : g.interior) v /= static_cast<double>(used);
    state_->geometry = std::move(g);
  });
  return state_->geometry;
}

double ConstraintSet::violation(const Distribution& p) const {
  require_same_space(space(), p.space(), "ConstraintSet::violation");
  double worst = 0.0;
  for (const auto& row : rows()) {
    double s = 0.0;
    for (std::size_t x = 0; x < size(); ++x) s += row.coeffs[x] * p[x];
    const double gap = row.relation == Relation::Equal ? std::fabs(s - row.target)
                                                       : std::max(0.0, row.target - s);
    worst = std::max(worst, gap);
  }
  if (lifted_) {
    // Fix the outcome block and ask whether some auxiliary assignment fits.
    const std::size_t n = size();
    const auto& block = lifted_->rows;
    StandardForm f(block.rows, lifted_->aux);
    for (std::size_t r = 0; r < block.rows; ++r) {
      double rhs = block.b[r];
      for (std::size_t x = 0; x < n; ++x) rhs -= block(r, x) * p[x];
      f.b[r] = rhs;
      for (std::size_t c = 0; c < lifted_->aux; ++c) f(r, c) = block(r, n + c);
    }
    Simplex lp(f, config_.lp_pivot_tolerance, 0.0);
    worst = std::max(worst, lp.infeasibility());
  }
  return worst;
}

bool ConstraintSet::contains(const Distribution& p, double tolerance) const {
  if (tolerance < 0.0) tolerance = config_.membership_tolerance;
  return violation(p) <= tolerance;
}

ConstraintSet ConstraintSet::with_condition(const RandomVariable& z,
                                            std::span<const double> value) const {
  require_same_space(space(), z.space(), "condition");
  require(!z.fiber(value, config_.value_tolerance).empty(), ErrorCode::InvalidArgument,
          "conditioning value " + format_value(value) + " is not in range(Z)");
  auto cond = conditioning_;
  cond.push_back({z, Value(value.begin(), value.end())});
  return ConstraintSet(spec_, std::move(cond), lifted_, config_);
}

DisjunctiveConstraint::DisjunctiveConstraint(std::vector<ConstraintSet> branches)
    : branches_(std::move(branches)) {
  require(!branches_.empty(), ErrorCode::Infeasible, "disjunction has no feasible branch");
  for (const auto& b : branches_) {
    require_same_space(branches_.front().space(), b.space(), "DisjunctiveConstraint");
  }
}

DisjunctiveConstraint DisjunctiveConstraint::from_specs(const std::vector<ConstraintSpec>& specs,
                                                        const SolverConfig& config) {
  std::vector<ConstraintSet> feasible;
  std::vector<std::size_t> skipped;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    try {
      feasible.push_back(ConstraintSet::create(specs[i], config));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Infeasible) throw;
      skipped.push_back(i);
    }
  }
  DisjunctiveConstraint d(std::move(feasible));
  d.skipped_ = std::move(skipped);
  return d;
}

LpExtremum lp_extremize(const ConstraintSet& c, std::span<const double> coeffs, Sense sense) {
  const std::size_t n = c.size();
  require(coeffs.size() == n, ErrorCode::InvalidArgument,
          "lp_extremize: one coefficient per outcome expected");
  std::vector<double> full(c.simplex().cols(), 0.0);
  std::copy(coeffs.begin(), coeffs.end(), full.begin());
  LpSolution sol = c.simplex().optimize(full, sense);
  sol.x.resize(n);
  double value = 0.0;
  auto optimizer = Distribution::normalized(c.space(), std::move(sol.x));
  for (std::size_t x = 0; x < n; ++x) value += coeffs[x] * optimizer[x];
  return {value, std::move(optimizer)};
}

Support support(const ConstraintSet& c) {
  const auto& g = c.geometry();
  Support s;
  s.max_probability.assign(g.var_max.begin(),
                           g.var_max.begin() + static_cast<std::ptrdiff_t>(c.size()));
  for (std::size_t x = 0; x < c.size(); ++x) {
    if (s.max_probability[x] > c.config().support_tolerance) s.outcomes.push_back(x);
  }
  return s;
}

ConstraintSet condition(const ConstraintSet& c, const RandomVariable& z,
                        std::span<const double> value) {
  return c.with_condition(z, value);
}

ConstraintSet convex_hull(const DisjunctiveConstraint& d) {
  const auto& branches = d.branches();
  if (branches.size() == 1) return branches.front();

  const std::size_t n = d.space()->size();
  // Columns: outcomes, then per branch its homogenized variables and weight.
  std::vector<std::size_t> offset;
  std::size_t cols = n;
  for (const auto& b : branches) {
    offset.push_back(cols);
    cols += b.standard_form().cols + 1;
  }
  StandardForm f(0, cols);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t r = f.add_row(0.0);
    f(r, x) = 1.0;
    for (std::size_t i = 0; i < branches.size(); ++i) f(r, offset[i] + x) = -1.0;
  }
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const StandardForm& bf = branches[i].standard_form();
    const std::size_t weight = offset[i] + bf.cols;
    for (std::size_t r = 0; r < bf.rows; ++r) {
      const std::size_t row = f.add_row(0.0);
      for (std::size_t c = 0; c < bf.cols; ++c) f(row, offset[i] + c) = bf(r, c);
      f(row, weight) = -bf.b[r];
    }
  }
  const std::size_t mix = f.add_row(1.0);
  for (std::size_t i = 0; i < branches.size(); ++i) {
    f(mix, offset[i] + branches[i].standard_form().cols) = 1.0;
  }
  return ConstraintSet::lifted(d.space(), LiftedBlock{cols - n, std::move(f)},
                               branches.front().config());
}

}  // namespace maxent
