#include "maxent/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxent/information.hpp"

namespace maxent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> loss_coefficients(const Distribution& q, const Measure& m,
                                      const Support& sup) {
  std::vector<double> c(q.size(), 0.0);
  for (std::size_t x : sup.outcomes) c[x] = log_loss(x, q, m);
  return c;
}

}  // namespace

WorstCase worst_case_loss(const Distribution& q, const ConstraintSet& c, const Measure& m) {
  require_same_space(q.space(), c.space(), "worst_case_loss");
  require_same_space(q.space(), m.space(), "worst_case_loss");
  const Support sup = support(c);
  for (std::size_t x : sup.outcomes) {
    if (q[x] <= 0.0) {
      std::vector<double> e(c.size(), 0.0);
      e[x] = 1.0;
      return {kInf, lp_extremize(c, e, Sense::Maximize).optimizer};
    }
  }
  auto best = lp_extremize(c, loss_coefficients(q, m, sup), Sense::Maximize);
  return {best.value, std::move(best.optimizer)};
}

std::vector<Distribution> vertex_probes(const ConstraintSet& c) {
  std::vector<Distribution> out;
  std::vector<double> e(c.size(), 0.0);
  for (std::size_t x = 0; x < c.size(); ++x) {
    e[x] = 1.0;
    out.push_back(lp_extremize(c, e, Sense::Maximize).optimizer);
    out.push_back(lp_extremize(c, e, Sense::Minimize).optimizer);
    e[x] = 0.0;
  }
  return out;
}

SaddleReport verify_saddle(const MaxEntProblem& problem) {
  const ConstraintSet& c = problem.constraints();
  MaxEntSolution sol = solve_maxent(problem);
  WorstCase wc = worst_case_loss(sol.distribution, c, problem.measure());

  auto probes = vertex_probes(c);
  const Support sup = support(c);
  const auto coeffs = loss_coefficients(sol.distribution, problem.measure(), sup);
  probes.push_back(lp_extremize(c, coeffs, Sense::Minimize).optimizer);
  probes.push_back(wc.witness);
  double lo = kInf;
  double hi = -kInf;
  for (const auto& p : probes) {
    double v = 0.0;
    for (std::size_t x : sup.outcomes) v += p[x] * coeffs[x];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  SaddleReport r{.maximin = sol.entropy_value,
                 .minimax = wc.value,
                 .gap = wc.value - sol.entropy_value,
                 .equalizer_spread = hi - lo,
                 .worst_case_witness = std::move(wc.witness),
                 .solution = std::move(sol),
                 .vertices = probes.size()};
  return r;
}

UnionSaddleReport verify_saddle(const DisjunctiveConstraint& d, const Measure& m) {
  auto naive = naive_maximin_detail(d, m);
  const ConstraintSet hull = convex_hull(d);
  MaxEntSolution q = solve_maxent(MaxEntProblem(m, hull));

  auto union_worst = [&](const Distribution& p) {
    double w = -kInf;
    for (const auto& b : d.branches()) w = std::max(w, worst_case_loss(p, b, m).value);
    return w;
  };

  UnionSaddleReport r{.maximin = naive.branches[naive.chosen].entropy_value,
                      .minimax = union_worst(q.distribution),
                      .gap = 0.0,
                      .minimax_solution = q,
                      .naive_solution = naive.branches[naive.chosen],
                      .naive_branch = naive.chosen,
                      .naive_worst_case = 0.0,
                      .branch_entropies = {},
                      .hull_verified = false};
  r.gap = r.minimax - r.maximin;
  r.naive_worst_case = union_worst(r.naive_solution.distribution);
  for (const auto& b : naive.branches) r.branch_entropies.push_back(b.entropy_value);
  r.hull_verified = std::fabs(r.minimax - q.entropy_value) <= hull.config().saddle_tolerance;
  return r;
}

double equalizer_residual(const MaxEntProblem& problem, const MaxEntSolution& solution,
                          const std::vector<Distribution>& probes) {
  const ConstraintSet& c = problem.constraints();
  double worst = 0.0;
  for (const auto& p : probes) {
    require(c.contains(p), ErrorCode::ProbeOutsideConstraintSet,
            "equalizer probe violates the constraints by " + std::to_string(c.violation(p)));
    const double loss = expected_log_loss(p, solution.distribution, problem.measure());
    worst = std::max(worst, std::fabs(loss - solution.entropy_value));
  }
  return worst;
}

double equalizer_residual(const MaxEntProblem& problem, const std::vector<Distribution>& probes) {
  return equalizer_residual(problem, solve_maxent(problem), probes);
}

}  // namespace maxent
