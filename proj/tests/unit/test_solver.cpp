#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "generators.hpp"
#include "maxent/maxent.hpp"

using namespace maxent;

namespace {

MaxEntSolution solve(const Measure& m, const ConstraintSet& c) { return solve_maxent(MaxEntProblem(m, c)); }

double binary_entropy(double p) { return -p * std::log(p) - (1 - p) * std::log(1 - p); }

// Independent primal oracle: gradient ascent on H restricted to the affine
// set {A p = b}, starting from a feasible interior point.
std::vector<double> projected_gradient(const Eigen::MatrixXd& a, std::vector<double> p, int steps, double eta) {
  const auto n = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(n, n) - a.transpose() * (a * a.transpose()).inverse() * a;
  Eigen::Map<Eigen::VectorXd> x(p.data(), n);
  for (int i = 0; i < steps; ++i) {
    Eigen::VectorXd g = (-(x.array().log()) - 1.0).matrix();
    Eigen::VectorXd step = eta * (proj * g);
    double scale = 1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (step(j) < 0) scale = std::min(scale, 0.5 * x(j) / -step(j));
    }
    x += scale * step;
  }
  return p;
}

}  // namespace

TEST(SolveMaxEnt, UniformWithoutConstraints) {
  auto s = make_numbered_space(3);
  const auto sol = solve(Measure::uniform(s), ConstraintSet::unconstrained(s));
  for (std::size_t x = 0; x < 3; ++x) EXPECT_NEAR(sol.distribution[x], 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(sol.entropy_value, std::log(3.0), 1e-12);
}

TEST(SolveMaxEnt, CoarseSpaceWithMeasure) {
  auto s = make_space({"{1}", "{2,3}"});
  const auto sol = solve(Measure(s, {1, 2}), ConstraintSet::unconstrained(s));
  EXPECT_NEAR(sol.distribution[0], 1.0 / 3.0, 1e-12);
}

TEST(SolveMaxEnt, DieWithMeanFourAndAHalf) {
  auto s = make_numbered_space(6);
  const auto face = RandomVariable::scalar(s, {1, 2, 3, 4, 5, 6});
  const auto c = ConstraintSet::create(ConstraintSpec(face, {4.5}));
  const auto sol = solve(Measure::uniform(s), c);
  EXPECT_NEAR(expectation(sol.distribution, face)[0], 4.5, 1e-8);
  for (std::size_t x = 1; x < 6; ++x) EXPECT_GT(sol.distribution[x], sol.distribution[x - 1]);

  Eigen::MatrixXd a(2, 6);
  for (int j = 0; j < 6; ++j) a(0, j) = 1.0, a(1, j) = j + 1;
  std::vector<double> start{0.05, 0.05, 0.1, 0.25, 0.25, 0.3};
  const auto oracle = projected_gradient(a, start, 200000, 0.05);
  for (std::size_t x = 0; x < 6; ++x) EXPECT_NEAR(sol.distribution[x], oracle[x], 1e-5);

  // Second oracle: P proportional to exp(beta x); bisect on beta.
  double lo = 0.0, hi = 5.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    double z = 0, m = 0;
    for (int j = 1; j <= 6; ++j) z += std::exp(mid * j), m += j * std::exp(mid * j);
    (m / z < 4.5 ? lo : hi) = mid;
  }
  double z = 0;
  for (int j = 1; j <= 6; ++j) z += std::exp(lo * j);
  for (std::size_t x = 0; x < 6; ++x) EXPECT_NEAR(sol.distribution[x], std::exp(lo * (x + 1)) / z, 1e-9);
}

TEST(SolveMaxEnt, ExponentialFamilyForm) {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = make_numbered_space(3 + rng.below(8));
    const auto phi = testgen::random_features(s, 1 + rng.below(3), rng);
    const auto c = testgen::random_constraints(phi, rng, trial % 2 == 1);
    const auto m = testgen::random_measure(s, rng);
    const auto sol = solve(m, c);
    EXPECT_LE(sol.residual, 1e-8);
    EXPECT_LE(sol.dual_residual, 1e-7);
    EXPECT_NEAR(sol.entropy_value, entropy(sol.distribution, m), 1e-9);
    const auto rows = c.rows();
    for (std::size_t x : sol.restricted_support) {
      double lin = sol.dual[0];
      for (std::size_t i = 0; i < rows.size(); ++i) lin += sol.dual[i + 1] * rows[i].coeffs[x];
      EXPECT_NEAR(std::log(sol.distribution[x] / m[x]), lin, 1e-7);
    }
    for (std::size_t x = 0; x < s->size(); ++x) {
      if (!support(c).contains(x)) EXPECT_EQ(sol.distribution[x], 0.0);
    }
  }
}

TEST(SolveMaxEnt, BeatsHitAndRunSamples) {
  Rng rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = make_numbered_space(4 + rng.below(5));
    const auto c = testgen::random_constraints(testgen::random_features(s, 2, rng), rng, trial % 2 == 1);
    const auto m = testgen::random_measure(s, rng);
    const auto sol = solve(m, c);
    for (const auto& p : hit_and_run(c, 1000, rng)) EXPECT_LE(entropy(p, m), sol.entropy_value + 1e-9);
  }
}

TEST(SolveMaxEnt, MeasureScaling) {
  Rng rng(23);
  auto s = make_numbered_space(6);
  const auto c = testgen::random_constraints(testgen::random_features(s, 2, rng), rng);
  const auto m = testgen::random_measure(s, rng);
  const auto a = solve(m, c);
  for (double k : {0.01, 3.0, 1000.0}) {
    const auto b = solve(m.scaled(k), c);
    EXPECT_LE(max_abs_difference(a.distribution, b.distribution), 1e-10);
    EXPECT_NEAR(b.entropy_value - a.entropy_value, std::log(k), 1e-9);
  }
}

TEST(SolveMaxEnt, Idempotent) {
  Rng rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = make_numbered_space(5 + rng.below(4));
    const auto phi = testgen::random_features(s, 2, rng);
    const auto m = testgen::random_measure(s, rng);
    const auto first = solve(m, testgen::random_constraints(phi, rng, trial % 2 == 0));
    const auto again = solve(m, ConstraintSet::create(ConstraintSpec(phi, expectation(first.distribution, phi))));
    EXPECT_LE(max_abs_difference(first.distribution, again.distribution), 1e-8);
  }
}

TEST(SolveMaxEnt, ConditioningRowsForceZeros) {
  auto s = make_numbered_space(4);
  const auto c = condition(ConstraintSet::unconstrained(s), RandomVariable::indicator(s, {0, 1}), Value{1.0});
  const auto sol = solve(Measure(s, {1, 3, 1, 1}), c);
  EXPECT_NEAR(sol.distribution[0], 0.25, 1e-12);
  EXPECT_NEAR(sol.distribution[1], 0.75, 1e-12);
  EXPECT_EQ(sol.distribution[2], 0.0);
  EXPECT_EQ(sol.restricted_support, (OutcomeSet{0, 1}));
}

TEST(SolveMaxEnt, InequalityRowsMatchActiveSetOracle) {
  auto s = make_numbered_space(5);
  const auto face = RandomVariable::scalar(s, {1, 2, 3, 4, 5});
  // Inactive: the unconstrained optimum (mean 3) already satisfies it.
  const auto loose = solve(Measure::uniform(s), ConstraintSet::create(ConstraintSpec(face, {2.0}, {Relation::AtLeast})));
  for (std::size_t x = 0; x < 5; ++x) EXPECT_NEAR(loose.distribution[x], 0.2, 1e-9);
  // Active: the answer is the equality-constrained one.
  const auto tight = solve(Measure::uniform(s), ConstraintSet::create(ConstraintSpec(face, {3.7}, {Relation::AtLeast})));
  const auto eq = solve(Measure::uniform(s), ConstraintSet::create(ConstraintSpec(face, {3.7})));
  EXPECT_LE(max_abs_difference(tight.distribution, eq.distribution), 1e-8);
}

TEST(MinimaxUnion, TwoPointUnion) {
  auto s = make_space({"0", "1"});
  const auto one = RandomVariable::indicator(s, {1});
  const auto d = DisjunctiveConstraint::from_specs({ConstraintSpec(one, {0.1}), ConstraintSpec(one, {0.95})});
  const auto m = Measure::uniform(s);
  const auto minimax = solve_minimax_union(d, m);
  const auto naive = naive_maximin_union(d, m);
  EXPECT_NEAR(minimax.distribution[1], 0.5, 1e-9);
  EXPECT_NEAR(naive.distribution[1], 0.1, 1e-9);
  auto worst = [&](const Distribution& q) {
    double w = -INFINITY;
    for (const auto& b : d.branches()) w = std::max(w, worst_case_loss(q, b, m).value);
    return w;
  };
  EXPECT_LT(worst(minimax.distribution), worst(naive.distribution));
}

TEST(MinimaxUnion, BoundaryOfHull) {
  auto s = make_space({"0", "1"});
  const auto one = RandomVariable::indicator(s, {1});
  const auto d = DisjunctiveConstraint::from_specs({ConstraintSpec(one, {0.6}), ConstraintSpec(one, {0.9})});
  const auto sol = solve_minimax_union(d, Measure::uniform(s));
  double best = -1, arg = 0;
  for (int i = 0; i <= 300000; ++i) {
    const double p = 0.6 + 0.3 * i / 300000.0;
    if (binary_entropy(p) > best) best = binary_entropy(p), arg = p;
  }
  EXPECT_NEAR(sol.distribution[1], arg, 1e-6);
  EXPECT_NEAR(sol.distribution[1], 0.6, 1e-9);
}

TEST(MinimaxUnion, SingleBranchMatchesSolve) {
  Rng rng(25);
  auto s = make_numbered_space(5);
  const auto c = testgen::random_constraints(testgen::random_features(s, 2, rng), rng);
  const auto m = testgen::random_measure(s, rng);
  const DisjunctiveConstraint d({c});
  EXPECT_LE(max_abs_difference(solve_minimax_union(d, m).distribution, solve(m, c).distribution), 1e-8);
  EXPECT_LE(max_abs_difference(naive_maximin_union(d, m).distribution, solve(m, c).distribution), 1e-12);
}

TEST(NaiveMaximin, TieGoesToLowestIndex) {
  auto s = make_space({"0", "1"});
  const auto one = RandomVariable::indicator(s, {1});
  const auto d = DisjunctiveConstraint::from_specs({ConstraintSpec(one, {0.2}), ConstraintSpec(one, {0.8})});
  const auto detail = naive_maximin_detail(d, Measure::uniform(s));
  EXPECT_EQ(detail.chosen, 0u);
  EXPECT_NEAR(detail.branches[detail.chosen].distribution[1], 0.2, 1e-12);
}
