#include "maxent/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "maxent/game.hpp"
#include "maxent/information.hpp"

namespace maxent {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Iterate {
  std::vector<double> p;  // full-length probabilities
  std::size_t iterations = 0;
  bool converged = false;
  double residual = std::numeric_limits<double>::infinity();
};

double log_sum_exp(const VectorXd& u) {
  const double top = u.maxCoeff();
  return top + std::log((u.array() - top).exp().sum());
}

// Damped Newton on psi(lambda) = ln sum_S M exp(lambda.(F - t)).
Iterate dual_newton(const MaxEntProblem& problem, const OutcomeSet& s) {
  const auto rows = problem.constraints().rows();
  const SolverConfig& cfg = problem.config();
  const auto n = static_cast<Index>(s.size());
  const auto k = static_cast<Index>(rows.size());

  MatrixXd g(n, k);
  VectorXd log_m(n);
  for (Index i = 0; i < n; ++i) {
    log_m(i) = std::log(problem.measure()[s[i]]);
    for (Index j = 0; j < k; ++j) g(i, j) = rows[j].coeffs[s[i]] - rows[j].target;
  }

  VectorXd lambda = VectorXd::Zero(k);
  auto evaluate = [&](const VectorXd& l, VectorXd& p) {
    VectorXd u = log_m + g * l;
    const double z = log_sum_exp(u);
    p = (u.array() - z).exp();
    return z;
  };

  Iterate it;
  VectorXd p;
  double psi = evaluate(lambda, p);
  VectorXd grad = g.transpose() * p;
  it.residual = k > 0 ? grad.cwiseAbs().maxCoeff() : 0.0;

  std::size_t polish = 0;
  while (it.iterations < cfg.max_newton_iterations) {
    if (it.residual <= cfg.moment_tolerance) {
      // A few extra steps are nearly free and push the moments to rounding level.
      if (++polish > 3 || it.residual < 1e-15) break;
    }
    MatrixXd h = g.transpose() * p.asDiagonal() * g - grad * grad.transpose();
    const VectorXd step = -h.completeOrthogonalDecomposition().solve(grad);
    const double slope = grad.dot(step);
    if (!(slope < 0.0)) break;

    double alpha = 1.0;
    VectorXd trial_p;
    VectorXd trial = lambda + step;
    double trial_psi = evaluate(trial, trial_p);
    while (trial_psi > psi + 1e-4 * alpha * slope && alpha > 1e-12) {
      alpha *= 0.5;
      trial = lambda + alpha * step;
      trial_psi = evaluate(trial, trial_p);
    }
    ++it.iterations;
    VectorXd trial_grad = g.transpose() * trial_p;
    const double trial_res = trial_grad.cwiseAbs().maxCoeff();
    if (alpha <= 1e-12 && !(trial_res < it.residual)) break;
    if (it.residual <= cfg.moment_tolerance && !(trial_res < it.residual)) break;
    lambda = trial;
    psi = trial_psi;
    p = trial_p;
    grad = trial_grad;
    it.residual = trial_res;
  }

  it.converged = it.residual <= cfg.moment_tolerance;
  it.p.assign(problem.measure().size(), 0.0);
  for (Index i = 0; i < n; ++i) it.p[s[i]] = p(i);
  return it;
}

// Primal path: minimize sum_o y ln(y/M) - tau sum_a ln y_a subject to A y = b
// over the standard-form variables that are not identically zero on C.
Iterate primal_barrier(const MaxEntProblem& problem) {
  const ConstraintSet& c = problem.constraints();
  const SolverConfig& cfg = problem.config();
  const StandardForm& form = c.standard_form();
  const auto& geom = c.geometry();
  const std::size_t n_out = c.size();

  std::vector<std::size_t> vars;
  for (std::size_t j = 0; j < form.cols; ++j) {
    if (geom.var_max[j] > cfg.support_tolerance) vars.push_back(j);
  }
  const auto nv = static_cast<Index>(vars.size());
  const auto m = static_cast<Index>(form.rows);
  MatrixXd a(m, nv);
  VectorXd b(m);
  for (Index r = 0; r < m; ++r) {
    b(r) = form.b[static_cast<std::size_t>(r)];
    for (Index j = 0; j < nv; ++j) a(r, j) = form(static_cast<std::size_t>(r), vars[j]);
  }
  VectorXd y(nv);
  VectorXd log_m(nv);
  std::vector<bool> outcome(vars.size());
  Index barrier_vars = 0;
  for (Index j = 0; j < nv; ++j) {
    y(j) = geom.interior[vars[j]];
    outcome[j] = vars[j] < n_out;
    log_m(j) = outcome[j] ? std::log(problem.measure()[vars[j]]) : 0.0;
    if (!outcome[j]) ++barrier_vars;
  }

  auto objective = [&](const VectorXd& v, double tau) {
    double f = 0.0;
    for (Index j = 0; j < nv; ++j) {
      if (v(j) <= 0.0) return std::numeric_limits<double>::infinity();
      f += outcome[j] ? v(j) * (std::log(v(j)) - log_m(j)) : -tau * std::log(v(j));
    }
    return f;
  };

  Iterate it;
  double tau = 1.0;
  bool done = false;
  while (!done) {
    // Centering for the current tau.
    double previous = std::numeric_limits<double>::infinity();
    for (int inner = 0; inner < 100; ++inner) {
      if (it.iterations >= cfg.max_barrier_iterations) {
        done = true;
        break;
      }
      VectorXd grad(nv);
      VectorXd dinv(nv);
      for (Index j = 0; j < nv; ++j) {
        if (outcome[j]) {
          grad(j) = std::log(y(j)) - log_m(j) + 1.0;
          dinv(j) = y(j);
        } else {
          grad(j) = -tau / y(j);
          dinv(j) = y(j) * y(j) / tau;
        }
      }
      // Newton step as a projection in the scaled variables z = D^{1/2} y,
      // which avoids squaring the condition number of A D^{-1} A^T.
      const VectorXd root = dinv.cwiseSqrt();
      const MatrixXd scaled = a * root.asDiagonal();
      const VectorXd gs = root.cwiseProduct(grad);
      Eigen::ColPivHouseholderQR<MatrixXd> qr(scaled.transpose());
      qr.setThreshold(1e-13);
      const MatrixXd q = MatrixXd(qr.householderQ()).leftCols(qr.rank());
      const VectorXd rp = a * y - b;
      VectorXd zstep = -(gs - q * (q.transpose() * gs));
      if (rp.cwiseAbs().maxCoeff() > 0.0) {
        zstep -= scaled.completeOrthogonalDecomposition().solve(rp);
      }
      const VectorXd step = root.cwiseProduct(zstep);
      ++it.iterations;

      const double decrement = zstep.squaredNorm();
      double alpha = 1.0;
      for (Index j = 0; j < nv; ++j) {
        if (step(j) < 0.0) alpha = std::min(alpha, -0.99 * y(j) / step(j));
      }
      if (decrement > 1e-8) {
        const double f0 = objective(y, tau);
        const double slope = grad.dot(step);
        while (alpha > 1e-14 && objective(y + alpha * step, tau) > f0 + 1e-4 * alpha * slope) {
          alpha *= 0.5;
        }
      }
      y += alpha * step;
      for (Index j = 0; j < nv; ++j) y(j) = std::max(y(j), 1e-300);
      if (decrement < 1e-26 || alpha <= 1e-14) break;
      if (previous < 1e-16 && decrement > 0.25 * previous) break;  // rounding floor
      previous = decrement;
    }
    if (static_cast<double>(barrier_vars) * tau <= cfg.duality_gap || barrier_vars == 0) break;
    tau *= 0.1;
  }

  it.p.assign(n_out, 0.0);
  for (Index j = 0; j < nv; ++j) {
    if (outcome[j]) it.p[vars[j]] = y(j);
  }
  it.residual = (a * y - b).cwiseAbs().maxCoeff();
  it.converged = !done && it.residual <= cfg.moment_tolerance;
  return it;
}

void fit_dual(const MaxEntProblem& problem, MaxEntSolution& sol) {
  const auto rows = problem.constraints().rows();
  const auto& s = sol.restricted_support;
  const auto n = static_cast<Index>(s.size());
  const auto k = static_cast<Index>(rows.size());
  MatrixXd x(n, k + 1);
  VectorXd target(n);
  for (Index i = 0; i < n; ++i) {
    x(i, 0) = 1.0;
    for (Index j = 0; j < k; ++j) x(i, j + 1) = rows[j].coeffs[s[i]];
    const double pi = sol.distribution[s[i]];
    target(i) = pi > 0.0 ? std::log(pi / problem.measure()[s[i]])
                         : -std::numeric_limits<double>::infinity();
  }
  if (!target.allFinite()) {
    sol.dual.clear();
    sol.dual_residual = std::numeric_limits<double>::infinity();
    return;
  }
  const VectorXd coef = x.completeOrthogonalDecomposition().solve(target);
  sol.dual.assign(coef.data(), coef.data() + coef.size());
  sol.dual_residual = n > 0 ? (x * coef - target).cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace

const char* to_string(SolveMethod m) noexcept {
  switch (m) {
    case SolveMethod::Trivial: return "trivial";
    case SolveMethod::DualNewton: return "dual-newton";
    case SolveMethod::PrimalBarrier: return "primal-barrier";
  }
  return "?";
}

MaxEntProblem::MaxEntProblem(Measure measure, ConstraintSet constraints)
    : measure_(std::move(measure)), constraints_(std::move(constraints)) {
  require_same_space(measure_.space(), constraints_.space(), "MaxEntProblem");
}

MaxEntSolution solve_maxent(const MaxEntProblem& problem) {
  const ConstraintSet& c = problem.constraints();
  const Support sup = support(c);
  const std::size_t n = c.size();

  Iterate it;
  SolveMethod method = SolveMethod::DualNewton;
  if (sup.outcomes.size() == 1) {
    it.p.assign(n, 0.0);
    it.p[sup.outcomes.front()] = 1.0;
    it.converged = true;
    method = SolveMethod::Trivial;
  } else if (!c.is_lifted() && !c.has_inequalities()) {
    it = dual_newton(problem, sup.outcomes);
  }
  if (!it.converged) {
    const std::size_t spent = it.iterations;
    it = primal_barrier(problem);
    it.iterations += spent;
    method = SolveMethod::PrimalBarrier;
  }

  MaxEntSolution sol{.distribution = Distribution::normalized(c.space(), it.p),
                     .entropy_value = 0.0,
                     .dual = {},
                     .dual_residual = 0.0,
                     .restricted_support = sup.outcomes,
                     .residual = 0.0,
                     .iterations = it.iterations,
                     .method = method};
  sol.residual = c.violation(sol.distribution);
  if (!it.converged || sol.residual > problem.config().moment_tolerance) {
    throw NonConvergenceError("MaxEnt iteration did not converge (residual " +
                                  std::to_string(sol.residual) + ")",
                              sol.distribution, sol.residual);
  }
  sol.entropy_value = entropy(sol.distribution, problem.measure());
  fit_dual(problem, sol);
  return sol;
}

MaxEntSolution solve_minimax_union(const DisjunctiveConstraint& d, const Measure& m) {
  const ConstraintSet hull = convex_hull(d);
  MaxEntSolution sol = solve_maxent(MaxEntProblem(m, hull));
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& branch : d.branches()) {
    worst = std::max(worst, worst_case_loss(sol.distribution, branch, m).value);
  }
  const double tol = hull.config().saddle_tolerance;
  require(std::fabs(worst - sol.entropy_value) <= tol, ErrorCode::VerificationFailed,
          "hull MaxEnt is not minimax over the union: worst-case loss " + std::to_string(worst) +
              " vs entropy " + std::to_string(sol.entropy_value));
  return sol;
}

MaximinDetail naive_maximin_detail(const DisjunctiveConstraint& d, const Measure& m) {
  MaximinDetail out;
  for (const auto& branch : d.branches()) {
    out.branches.push_back(solve_maxent(MaxEntProblem(m, branch)));
  }
  // Entropies within solver accuracy count as tied; the lower index wins.
  const double tie = d.branches().front().config().value_tolerance;
  for (std::size_t i = 1; i < out.branches.size(); ++i) {
    if (out.branches[i].entropy_value > out.branches[out.chosen].entropy_value + tie) {
      out.chosen = i;
    }
  }
  return out;
}

MaxEntSolution naive_maximin_union(const DisjunctiveConstraint& d, const Measure& m) {
  auto detail = naive_maximin_detail(d, m);
  return std::move(detail.branches[detail.chosen]);
}

}  // namespace maxent
