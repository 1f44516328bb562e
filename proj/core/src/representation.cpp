#include "maxent/representation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maxent/errors.hpp"
#include "maxent/information.hpp"
#include "maxent/lp.hpp"

namespace maxent {

namespace {

constexpr double kCompatibilityMargin = 1e-12;
constexpr std::size_t kMaxCopies = 1000000;

bool covers(const std::vector<std::size_t>& map, std::size_t n) {
  std::vector<bool> hit(n, false);
  for (std::size_t i : map) hit[i] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

RandomVariable index_variable(const SpacePtr& space, const std::vector<std::size_t>& map) {
  std::vector<double> v(map.begin(), map.end());
  return RandomVariable::scalar(space, std::move(v));
}

// Representative v for each w, or the first pair of outcomes of Omega_V that
// share a w but disagree on some row.
std::optional<std::pair<std::size_t, std::size_t>> find_row_conflict(
    const RepresentationShift& shift, const std::vector<MomentRow>& rows,
    std::vector<std::size_t>& representative, double tol) {
  const auto& h = shift.to_original();
  const auto& w = shift.to_new();
  const std::size_t none = h.size();
  representative.assign(shift.new_space()->size(), none);
  for (std::size_t v = 0; v < h.size(); ++v) {
    std::size_t& rep = representative[w[v]];
    if (rep == none) {
      rep = v;
      continue;
    }
    for (const auto& row : rows) {
      if (std::fabs(row.coeffs[h[v]] - row.coeffs[h[rep]]) > tol) return std::make_pair(rep, v);
    }
  }
  return std::nullopt;
}

struct Compatibility {
  bool feasible = false;
  double margin = 0.0;
  std::vector<double> weights;
};

// max s subject to M_V = s + m', m' >= 0, M_V pushing forward to both measures.
Compatibility compatible_measure(const RepresentationShift& shift, const Measure& mx,
                                 const Measure& mw, const SolverConfig& cfg) {
  const std::size_t nv = shift.underlying()->size();
  StandardForm f(0, nv + 1);
  const auto add_marginal = [&](const std::vector<std::size_t>& map, const Measure& m) {
    std::vector<std::size_t> first(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) first[i] = f.add_row(m[i]);
    for (std::size_t v = 0; v < nv; ++v) {
      f(first[map[v]], 0) += 1.0;
      f(first[map[v]], v + 1) = 1.0;
    }
  };
  add_marginal(shift.to_original(), mx);
  add_marginal(shift.to_new(), mw);

  Compatibility out;
  Simplex lp(f, cfg.lp_pivot_tolerance, cfg.lp_feasibility_tolerance);
  if (!lp.feasible()) return out;
  std::vector<double> c(nv + 1, 0.0);
  c[0] = 1.0;
  const LpSolution sol = lp.optimize(c, Sense::Maximize);
  out.margin = sol.value;
  out.feasible = sol.value > kCompatibilityMargin;
  out.weights.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) out.weights[v] = sol.x[0] + sol.x[v + 1];
  return out;
}

}  // namespace

RepresentationShift::RepresentationShift(SpacePtr underlying, SpacePtr original,
                                         SpacePtr new_space, std::vector<std::size_t> to_original,
                                         std::vector<std::size_t> to_new,
                                         std::optional<Measure> new_measure)
    : underlying_(std::move(underlying)),
      original_(std::move(original)),
      new_space_(std::move(new_space)),
      to_original_(std::move(to_original)),
      to_new_(std::move(to_new)),
      new_measure_(std::move(new_measure)) {
  require(underlying_ && original_ && new_space_, ErrorCode::InvalidArgument,
          "representation shift needs all three spaces");
  require(to_original_.size() == underlying_->size() && to_new_.size() == underlying_->size(),
          ErrorCode::InvalidArgument, "shift maps must be defined on every outcome of Omega_V");
  for (std::size_t v = 0; v < to_original_.size(); ++v) {
    require(to_original_[v] < original_->size() && to_new_[v] < new_space_->size(),
            ErrorCode::InvalidArgument, "shift map value outside its target space");
  }
  if (new_measure_) require_same_space(new_measure_->space(), new_space_, "RepresentationShift");
}

RepresentationShift RepresentationShift::identity(const Measure& m) {
  std::vector<std::size_t> id(m.size());
  std::iota(id.begin(), id.end(), 0);
  return RepresentationShift(m.space(), m.space(), m.space(), id, id, m);
}

RandomVariable RepresentationShift::original_variable() const {
  return index_variable(underlying_, to_original_);
}

RandomVariable RepresentationShift::new_variable() const {
  return index_variable(underlying_, to_new_);
}

RandomVariable RepresentationShift::pull_back(const RandomVariable& f) const {
  require_same_space(f.space(), original_, "pull_back");
  std::vector<double> table;
  table.reserve(to_original_.size() * f.dim());
  for (std::size_t x : to_original_) {
    auto v = f.at(x);
    table.insert(table.end(), v.begin(), v.end());
  }
  return RandomVariable(underlying_, f.dim(), std::move(table));
}

ShiftVerdict validate_shift(const RepresentationShift& shift, const MaxEntProblem& problem) {
  ShiftVerdict out;
  if (!same_space(shift.original(), problem.space())) {
    out.reason = "shift original space differs from the problem space";
    return out;
  }
  if (problem.constraints().is_lifted()) {
    out.reason = "hull constraint sets cannot be shifted";
    return out;
  }
  out.original_surjective = covers(shift.to_original(), shift.original()->size());
  out.new_surjective = covers(shift.to_new(), shift.new_space()->size());
  std::vector<std::size_t> rep;
  out.determination_counterexample =
      find_row_conflict(shift, problem.constraints().rows(), rep, problem.config().value_tolerance);
  if (shift.new_measure()) {
    const auto compat =
        compatible_measure(shift, problem.measure(), *shift.new_measure(), problem.config());
    out.measures_compatible = compat.feasible;
    out.compatibility_margin = compat.margin;
    if (compat.feasible) out.underlying_measure = Measure(shift.underlying(), compat.weights);
  }

  if (!out.original_surjective) {
    out.reason = "h is not onto Omega_X";
  } else if (!out.new_surjective) {
    out.reason = "W_V is not onto Omega_W";
  } else if (out.determination_counterexample) {
    const auto [v1, v2] = *out.determination_counterexample;
    out.reason = "W_V does not determine the constraint: " + shift.underlying()->label(v1) +
                 " and " + shift.underlying()->label(v2) + " share a new outcome";
  } else if (out.measures_compatible && !*out.measures_compatible) {
    out.reason = "no strictly positive measure on Omega_V is compatible with both measures";
  } else {
    out.valid = true;
  }
  return out;
}

MaxEntProblem induce_problem(const RepresentationShift& shift, const MaxEntProblem& problem,
                             const Measure& new_measure) {
  require_same_space(new_measure.space(), shift.new_space(), "induce_problem");
  RepresentationShift with_measure(shift.underlying(), shift.original(), shift.new_space(),
                                   shift.to_original(), shift.to_new(), new_measure);
  const ShiftVerdict verdict = validate_shift(with_measure, problem);
  require(verdict.valid, ErrorCode::InvalidShift, "invalid representation shift: " + verdict.reason);

  const auto rows = problem.constraints().rows();
  std::vector<std::size_t> rep;
  find_row_conflict(shift, rows, rep, problem.config().value_tolerance);
  const std::size_t nw = shift.new_space()->size();
  const std::size_t k = rows.size();
  std::vector<double> table(nw * k);
  std::vector<double> target(k);
  std::vector<Relation> relations(k);
  for (std::size_t i = 0; i < k; ++i) {
    target[i] = rows[i].target;
    relations[i] = rows[i].relation;
    for (std::size_t w = 0; w < nw; ++w) {
      table[w * k + i] = rows[i].coeffs[shift.to_original()[rep[w]]];
    }
  }
  ConstraintSpec spec(RandomVariable(shift.new_space(), k, std::move(table)), std::move(target),
                      std::move(relations));
  return MaxEntProblem(new_measure, ConstraintSet::create(std::move(spec), problem.config()));
}

MaxEntProblem induce_problem(const RepresentationShift& shift, const MaxEntProblem& problem) {
  require(shift.new_measure().has_value(), ErrorCode::InvalidShift,
          "shift has no measure on the new space");
  return induce_problem(shift, problem, *shift.new_measure());
}

InvarianceReport check_invariance(const RepresentationShift& shift, const MaxEntProblem& problem,
                                  const RandomVariable& y) {
  require_same_space(y.space(), problem.space(), "check_invariance");
  const double tol = problem.config().value_tolerance;
  const RandomVariable yv = shift.pull_back(y);
  const auto& w = shift.to_new();
  std::vector<double> yw_table(shift.new_space()->size() * y.dim());
  std::vector<std::size_t> seen(shift.new_space()->size(), w.size());
  for (std::size_t v = 0; v < w.size(); ++v) {
    if (seen[w[v]] == w.size()) {
      seen[w[v]] = v;
      std::copy(yv.at(v).begin(), yv.at(v).end(),
                yw_table.begin() + static_cast<std::ptrdiff_t>(w[v] * y.dim()));
    } else if (!values_equal(yv.at(v), yv.at(seen[w[v]]), tol)) {
      fail(ErrorCode::YNotExpressibleInNewSpace,
           "W_V does not determine Y: " + shift.underlying()->label(seen[w[v]]) + " and " +
               shift.underlying()->label(v) + " differ in Y but share a new outcome");
    }
  }
  const RandomVariable yw(shift.new_space(), y.dim(), std::move(yw_table));

  const MaxEntProblem shifted = induce_problem(shift, problem);
  const Distribution px = solve_maxent(problem).distribution;
  const Distribution pw = solve_maxent(shifted).distribution;

  InvarianceReport out;
  for (const auto& value : y.range(tol)) {
    InvarianceRow row{value, px.mass(y.fiber(value, tol)), pw.mass(yw.fiber(value, tol))};
    out.max_discrepancy = std::max(out.max_discrepancy, std::fabs(row.original - row.shifted));
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::optional<std::pair<long, long>> rational_approximation(double x, long max_denominator,
                                                            double tolerance) {
  if (!std::isfinite(x)) return std::nullopt;
  const double sign = x < 0.0 ? -1.0 : 1.0;
  double rest = std::fabs(x);
  const double target = rest;
  // Convergents p_k / q_k of the continued fraction.
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int depth = 0; depth < 64; ++depth) {
    const double a = std::floor(rest);
    if (a > 1e15) break;
    const long ai = static_cast<long>(a);
    const long p2 = ai * p1 + p0;
    const long q2 = ai * q1 + q0;
    if (q2 > max_denominator) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::fabs(target - static_cast<double>(p1) / static_cast<double>(q1)) <=
        tolerance * std::max(1.0, target)) {
      return std::make_pair(static_cast<long>(sign) * p1, q1);
    }
    const double frac = rest - a;
    if (frac <= 0.0) break;
    rest = 1.0 / frac;
  }
  return std::nullopt;
}

RepresentationShift measure_to_uniform_space(const Measure& m, const MaxEntProblem& problem,
                                             long max_denominator) {
  require_same_space(m.space(), problem.space(), "measure_to_uniform_space");
  std::vector<std::pair<long, long>> frac;
  long d = 1;
  for (std::size_t x = 0; x < m.size(); ++x) {
    const auto r = rational_approximation(m[x], max_denominator);
    require(r.has_value(), ErrorCode::IrrationalWeights,
            "weight of " + m.space()->label(x) + " has no rational form with denominator <= " +
                std::to_string(max_denominator));
    frac.push_back(*r);
    d = std::lcm(d, r->second);
    require(d <= max_denominator, ErrorCode::DenominatorOverflow,
            "common denominator exceeds " + std::to_string(max_denominator));
  }

  std::vector<std::string> labels;
  std::vector<std::size_t> to_original;
  for (std::size_t x = 0; x < m.size(); ++x) {
    const long copies = frac[x].first * (d / frac[x].second);
    require(labels.size() + static_cast<std::size_t>(copies) <= kMaxCopies,
            ErrorCode::DenominatorOverflow, "split space would exceed " +
                                                std::to_string(kMaxCopies) + " outcomes");
    for (long k = 1; k <= copies; ++k) {
      labels.push_back(m.space()->label(x) + "#" + std::to_string(k));
      to_original.push_back(x);
    }
  }
  auto v = make_space(std::move(labels));
  std::vector<std::size_t> id(v->size());
  std::iota(id.begin(), id.end(), 0);
  Measure uniform = Measure::uniform(v, 1.0 / static_cast<double>(d));
  return RepresentationShift(v, m.space(), v, std::move(to_original), std::move(id),
                             std::move(uniform));
}

namespace experimental {

std::optional<std::vector<double>> joint_with_marginals(const RandomVariable& y,
                                                        const std::vector<double>& y_weights,
                                                        const RandomVariable& z,
                                                        const std::vector<double>& z_weights) {
  require_same_space(y.space(), z.space(), "joint_with_marginals");
  const auto fy = y.fiber_index();
  const auto fz = z.fiber_index();
  require(y_weights.size() == y.range().size() && z_weights.size() == z.range().size(),
          ErrorCode::InvalidArgument, "one weight per range element expected");
  const std::size_t n = y.size();
  StandardForm f(y_weights.size() + z_weights.size(), n);
  for (std::size_t i = 0; i < y_weights.size(); ++i) f.b[i] = y_weights[i];
  for (std::size_t i = 0; i < z_weights.size(); ++i) f.b[y_weights.size() + i] = z_weights[i];
  for (std::size_t x = 0; x < n; ++x) {
    f(fy[x], x) = 1.0;
    f(y_weights.size() + fz[x], x) = 1.0;
  }
  Simplex lp(f);
  if (!lp.feasible()) return std::nullopt;
  return lp.initial_vertex();
}

}  // namespace experimental

}  // namespace maxent
