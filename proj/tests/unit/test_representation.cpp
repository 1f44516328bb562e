#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "maxent/maxent.hpp"

using namespace maxent;

namespace {

MaxEntProblem free_problem(const Measure& m) {
  return MaxEntProblem(m, ConstraintSet::unconstrained(m.space()));
}

// Omega_X = {1,2,3} uniform; Omega_W = {{1}, {2,3}} with M_W = (1,2).
RepresentationShift bertrand_shift(const SpacePtr& x) {
  auto w = make_space({"{1}", "{2,3}"});
  return RepresentationShift(x, x, w, {0, 1, 2}, {0, 1, 1}, Measure(w, {1.0, 2.0}));
}

Distribution push(const Distribution& p, const std::vector<std::size_t>& map, const SpacePtr& to) {
  std::vector<double> w(to->size(), 0.0);
  for (std::size_t i = 0; i < map.size(); ++i) w[map[i]] += p[i];
  return Distribution(to, w);
}

}  // namespace

TEST(Shift, IdentityIsValidAndChangesNothing) {
  Rng rng(41);
  auto s = make_numbered_space(5);
  const auto m = testgen::random_measure(s, rng);
  const MaxEntProblem problem(m, testgen::random_constraints(testgen::random_features(s, 2, rng), rng));
  const auto id = RepresentationShift::identity(m);
  const auto verdict = validate_shift(id, problem);
  EXPECT_TRUE(verdict.valid) << verdict.reason;
  ASSERT_TRUE(verdict.measures_compatible.has_value());
  EXPECT_TRUE(*verdict.measures_compatible);

  const auto induced = induce_problem(id, problem);
  const auto a = solve_maxent(problem).distribution;
  const auto b = solve_maxent(induced).distribution;
  EXPECT_LE(max_abs_difference(a, b), 1e-12);
  EXPECT_EQ(check_invariance(id, problem, testgen::random_features(s, 1, rng)).max_discrepancy, 0.0);
}

TEST(Shift, BertrandCoarsening) {
  auto x = make_space({"1", "2", "3"});
  const auto problem = free_problem(Measure::uniform(x));
  const auto shift = bertrand_shift(x);
  EXPECT_TRUE(validate_shift(shift, problem).valid);

  const auto induced = induce_problem(shift, problem);
  EXPECT_EQ(induced.space()->size(), 2u);
  EXPECT_EQ(induced.measure().weights(), (std::vector<double>{1.0, 2.0}));
  EXPECT_NEAR(solve_maxent(induced).distribution[0], 1.0 / 3.0, 1e-12);

  const auto report = check_invariance(shift, problem, RandomVariable::indicator(x, {0}));
  EXPECT_LE(report.max_discrepancy, 1e-12);
  for (const auto& row : report.rows) {
    if (row.y[0] == 1.0) EXPECT_NEAR(row.original, 1.0 / 3.0, 1e-12);
  }
}

TEST(Shift, CoarseningAcrossConstraintValuesIsInvalid) {
  auto x = make_space({"1", "2", "3"});
  const auto phi = RandomVariable::scalar(x, {0.0, 1.0, 1.0});
  const MaxEntProblem problem(Measure::uniform(x), ConstraintSet::create(ConstraintSpec(phi, {0.5})));
  auto w = make_space({"a", "b"});
  const RepresentationShift shift(x, x, w, {0, 1, 2}, {0, 0, 1}, Measure(w, {2.0, 1.0}));
  const auto verdict = validate_shift(shift, problem);
  EXPECT_FALSE(verdict.valid);
  ASSERT_TRUE(verdict.determination_counterexample.has_value());
  EXPECT_EQ(*verdict.determination_counterexample, (std::pair<std::size_t, std::size_t>{0, 1}));
  try {
    induce_problem(shift, problem);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidShift);
  }
}

TEST(Shift, NonSurjectiveMaps) {
  auto x = make_space({"1", "2"});
  auto w = make_space({"a", "b", "c"});
  const RepresentationShift shift(x, x, w, {0, 1}, {0, 1}, Measure(w, {1.0, 1.0, 1.0}));
  const auto verdict = validate_shift(shift, free_problem(Measure::uniform(x)));
  EXPECT_FALSE(verdict.valid);
  EXPECT_TRUE(verdict.original_surjective);
  EXPECT_FALSE(verdict.new_surjective);
}

TEST(Shift, IncompatibleMeasures) {
  auto x = make_space({"1", "2", "3"});
  auto w = make_space({"a", "b"});
  // Total mass 3 on one side and 4 on the other.
  const RepresentationShift shift(x, x, w, {0, 1, 2}, {0, 1, 1}, Measure(w, {1.0, 3.0}));
  const auto verdict = validate_shift(shift, free_problem(Measure::uniform(x)));
  EXPECT_FALSE(verdict.valid);
  ASSERT_TRUE(verdict.measures_compatible.has_value());
  EXPECT_FALSE(*verdict.measures_compatible);
}

TEST(Shift, Refinement) {
  auto x = make_space({"a", "b"});
  const auto phi = RandomVariable::scalar(x, {1.0, 3.0});
  const MaxEntProblem problem(Measure(x, {1.0, 2.0}), ConstraintSet::create(ConstraintSpec(phi, {2.0})));
  auto w = make_space({"a", "b1", "b2"});
  const RepresentationShift shift(w, x, w, {0, 1, 1}, {0, 1, 2}, Measure(w, {1.0, 0.5, 1.5}));
  ASSERT_TRUE(validate_shift(shift, problem).valid);
  const auto induced = induce_problem(shift, problem);
  EXPECT_EQ(induced.constraints().spec().phi().table(), (std::vector<double>{1.0, 3.0, 3.0}));
  EXPECT_LE(check_invariance(shift, problem, RandomVariable::indicator(x, {0})).max_discrepancy, 1e-9);
}

TEST(Shift, MissingMeasure) {
  auto x = make_space({"1", "2", "3"});
  auto w = make_space({"a", "b"});
  const RepresentationShift shift(x, x, w, {0, 1, 2}, {0, 1, 1});
  const auto problem = free_problem(Measure::uniform(x));
  const auto verdict = validate_shift(shift, problem);
  EXPECT_TRUE(verdict.valid);
  EXPECT_FALSE(verdict.measures_compatible.has_value());
  EXPECT_THROW(induce_problem(shift, problem), Error);
  // Supplying M_W explicitly works.
  EXPECT_NEAR(solve_maxent(induce_problem(shift, problem, Measure(w, {1.0, 2.0}))).distribution[0],
              1.0 / 3.0, 1e-12);
}

TEST(Shift, YMustBeExpressible) {
  auto x = make_space({"1", "2", "3"});
  const auto problem = free_problem(Measure::uniform(x));
  try {
    check_invariance(bertrand_shift(x), problem, RandomVariable::indicator(x, {1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::YNotExpressibleInNewSpace);
  }
}

TEST(Shift, RandomInvariance) {
  Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    auto s = make_numbered_space(2 + rng.below(7));
    const auto m = testgen::random_rational_measure(s, rng, 100);
    const auto c = testgen::random_constraints(testgen::random_features(s, 1 + rng.below(2), rng, 0, 2), rng);
    const MaxEntProblem problem(m, c);
    const auto sc = testgen::random_shift(problem, rng, trial % 2 == 1);
    const auto verdict = validate_shift(sc.shift, problem);
    ASSERT_TRUE(verdict.valid) << verdict.reason;
    EXPECT_LE(check_invariance(sc.shift, problem, sc.y).max_discrepancy, 1e-6);
  }
}

// C_W is used in its moment form; pushing members of C forward must land in it.
TEST(Shift, PushedMembersLieInInducedSet) {
  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = make_numbered_space(3 + rng.below(5));
    const MaxEntProblem problem(testgen::random_measure(s, rng),
                                testgen::random_constraints(testgen::random_features(s, 2, rng, 0, 1), rng));
    const bool refine = trial % 2 == 1;
    const auto sc = testgen::random_shift(problem, rng, refine);
    const auto induced = induce_problem(sc.shift, problem);
    for (const auto& p : hit_and_run(problem.constraints(), 20, rng)) {
      // P_V: split each P_X(x) across its copies in proportion to M_W.
      std::vector<double> pv(sc.shift.underlying()->size());
      const auto& h = sc.shift.to_original();
      const auto& mw = *sc.shift.new_measure();
      std::vector<double> fiber_mass(s->size(), 0.0);
      for (std::size_t v = 0; v < h.size(); ++v) fiber_mass[h[v]] += refine ? mw[v] : 1.0;
      for (std::size_t v = 0; v < h.size(); ++v) pv[v] = p[h[v]] * (refine ? mw[v] : 1.0) / fiber_mass[h[v]];
      const auto pw = push(Distribution(sc.shift.underlying(), pv), sc.shift.to_new(), sc.shift.new_space());
      EXPECT_TRUE(induced.constraints().contains(pw, 1e-9));
    }
  }
}

TEST(Shift, CompatibilityIsSymmetric) {
  Rng rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = make_numbered_space(3 + rng.below(4));
    const auto problem = free_problem(testgen::random_rational_measure(s, rng, 20));
    const auto sc = testgen::random_shift(problem, rng, false);
    auto mw = sc.shift.new_measure()->weights();
    if (trial % 2 == 1) mw[0] += 1.0;  // breaks compatibility
    const Measure new_measure(sc.shift.new_space(), mw);
    const RepresentationShift forward(sc.shift.underlying(), s, sc.shift.new_space(), sc.shift.to_original(),
                                      sc.shift.to_new(), new_measure);
    const RepresentationShift backward(sc.shift.underlying(), sc.shift.new_space(), s, sc.shift.to_new(),
                                       sc.shift.to_original(), problem.measure());
    const auto a = validate_shift(forward, problem);
    const auto b = validate_shift(backward, free_problem(new_measure));
    ASSERT_TRUE(a.measures_compatible && b.measures_compatible);
    EXPECT_EQ(*a.measures_compatible, *b.measures_compatible);
    EXPECT_EQ(*a.measures_compatible, trial % 2 == 0);
  }
}

TEST(UniformSpace, UnitMeasureIsOneCopyEach) {
  auto s = make_numbered_space(4);
  const auto problem = free_problem(Measure::uniform(s));
  const auto shift = measure_to_uniform_space(problem.measure(), problem);
  EXPECT_EQ(shift.underlying()->size(), 4u);
  EXPECT_TRUE(validate_shift(shift, problem).valid);
}

TEST(UniformSpace, BertrandReversed) {
  auto y = make_space({"{1}", "{2,3}"});
  const auto problem = free_problem(Measure(y, {1.0, 2.0}));
  const auto shift = measure_to_uniform_space(problem.measure(), problem);
  EXPECT_EQ(shift.underlying()->size(), 3u);
  const auto induced = induce_problem(shift, problem, Measure::uniform(shift.new_space()));
  const auto pv = solve_maxent(induced).distribution;
  EXPECT_NEAR(push(pv, shift.to_original(), y)[0], 1.0 / 3.0, 1e-12);
}

TEST(UniformSpace, OneThreeSplit) {
  auto s = make_space({"1", "2"});
  const Measure m(s, {0.25, 0.75});
  const auto problem = free_problem(m);
  EXPECT_NEAR(solve_maxent(problem).distribution[0], 0.25, 1e-12);
  const auto shift = measure_to_uniform_space(m, problem);
  EXPECT_EQ(shift.underlying()->size(), 4u);
  const auto pv = solve_maxent(induce_problem(shift, problem)).distribution;
  EXPECT_NEAR(push(pv, shift.to_original(), s)[0], 0.25, 1e-12);
}

TEST(UniformSpace, RoundTrip) {
  Rng rng(45);
  for (int trial = 0; trial < 30; ++trial) {
    auto s = make_numbered_space(2 + rng.below(5));
    const auto m = testgen::random_rational_measure(s, rng, 12);
    const MaxEntProblem problem(m, testgen::random_constraints(testgen::random_features(s, 1 + rng.below(2), rng), rng));
    const auto shift = measure_to_uniform_space(m, problem);
    EXPECT_TRUE(validate_shift(shift, problem).valid);
    const auto pv = solve_maxent(induce_problem(shift, problem)).distribution;
    EXPECT_LE(max_abs_difference(push(pv, shift.to_original(), s), solve_maxent(problem).distribution), 1e-8);
  }
}

TEST(UniformSpace, Errors) {
  auto s = make_space({"1", "2"});
  const Measure irrational(s, {1.0, std::numbers::pi});
  try {
    measure_to_uniform_space(irrational, free_problem(irrational));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IrrationalWeights);
  }
  const Measure fine(s, {1.0 / 97.0, 1.0 / 89.0});
  try {
    measure_to_uniform_space(fine, free_problem(fine), 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DenominatorOverflow);
  }
}

TEST(RationalApproximation, Examples) {
  EXPECT_EQ(rational_approximation(0.75, 100), (std::pair<long, long>{3, 4}));
  EXPECT_EQ(rational_approximation(1.0 / 3.0, 100), (std::pair<long, long>{1, 3}));
  EXPECT_EQ(rational_approximation(2.0, 1), (std::pair<long, long>{2, 1}));
  EXPECT_FALSE(rational_approximation(std::numbers::pi, 100).has_value());
  Rng rng(46);
  for (int i = 0; i < 200; ++i) {
    const long q = 1 + static_cast<long>(rng.below(100));
    const long p = static_cast<long>(rng.below(300));
    const auto r = rational_approximation(static_cast<double>(p) / static_cast<double>(q), 100);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->first * q, p * r->second);
  }
}

TEST(JointWithMarginals, Examples) {
  auto s = make_numbered_space(4);
  const auto y = RandomVariable::scalar(s, {0, 0, 1, 1});
  const auto z = RandomVariable::scalar(s, {0, 1, 0, 1});
  const auto joint = experimental::joint_with_marginals(y, {0.3, 0.7}, z, {0.5, 0.5});
  ASSERT_TRUE(joint.has_value());
  EXPECT_NEAR((*joint)[0] + (*joint)[1], 0.3, 1e-12);
  EXPECT_NEAR((*joint)[0] + (*joint)[2], 0.5, 1e-12);
  EXPECT_FALSE(experimental::joint_with_marginals(y, {0.3, 0.7}, z, {0.5, 0.6}).has_value());
  // Y = Z forces equal marginals.
  EXPECT_FALSE(experimental::joint_with_marginals(y, {0.3, 0.7}, y, {0.5, 0.5}).has_value());
}
