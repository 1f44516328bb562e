#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <functional>

#include "generators.hpp"
#include "maxent/maxent.hpp"

using namespace maxent;

namespace {

// Brute-force LP oracle: every basic feasible solution of {y >= 0, A y = b}
// comes from some choice of r columns; enumerate them all.
double vertex_enumeration(const StandardForm& f, const std::vector<double>& c, bool maximize) {
  Eigen::MatrixXd a(f.rows, f.cols);
  Eigen::VectorXd b(f.rows);
  for (std::size_t r = 0; r < f.rows; ++r) {
    b(static_cast<Eigen::Index>(r)) = f.b[r];
    for (std::size_t j = 0; j < f.cols; ++j) a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = f(r, j);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  const auto rank = static_cast<std::size_t>(lu.rank());
  double best = maximize ? -INFINITY : INFINITY;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (pick.size() == rank) {
      Eigen::MatrixXd sub(f.rows, static_cast<Eigen::Index>(rank));
      for (std::size_t i = 0; i < rank; ++i) sub.col(static_cast<Eigen::Index>(i)) = a.col(static_cast<Eigen::Index>(pick[i]));
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
      if (static_cast<std::size_t>(qr.rank()) < rank) return;
      Eigen::VectorXd y = qr.solve(b);
      if ((sub * y - b).cwiseAbs().maxCoeff() > 1e-9 || y.minCoeff() < -1e-9) return;
      double v = 0.0;
      for (std::size_t i = 0; i < rank; ++i) v += c[pick[i]] * y(static_cast<Eigen::Index>(i));
      best = maximize ? std::max(best, v) : std::min(best, v);
      return;
    }
    for (std::size_t j = start; j < f.cols; ++j) {
      pick.push_back(j);
      rec(j + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return best;
}

ConstraintSet pinned(const SpacePtr& s, const OutcomeSet& event, double t) {
  return ConstraintSet::create(ConstraintSpec(RandomVariable::indicator(s, event), {t}));
}

}  // namespace

TEST(Simplex, SolvesSmallProgram) {
  StandardForm f(2, 3);
  f(0, 0) = 1, f(0, 1) = 1, f(0, 2) = 1, f.b[0] = 1;
  f(1, 0) = 1, f(1, 1) = -1, f.b[1] = 0;
  Simplex lp(f);
  ASSERT_TRUE(lp.feasible());
  const auto sol = lp.optimize(std::vector<double>{1, 0, 0}, Sense::Maximize);
  EXPECT_NEAR(sol.value, 0.5, 1e-12);
  EXPECT_LE(f.max_violation(sol.x), 1e-12);
  f.b[1] = 2;
  EXPECT_FALSE(Simplex(f).feasible());
}

TEST(LpExtremize, Examples) {
  auto s = make_numbered_space(3);
  const auto free = ConstraintSet::unconstrained(s);
  const auto top = lp_extremize(free, std::vector<double>{1, 0, 0}, Sense::Maximize);
  EXPECT_NEAR(top.value, 1.0, 1e-12);
  EXPECT_NEAR(top.optimizer[0], 1.0, 1e-12);
  auto two = make_numbered_space(2);
  EXPECT_NEAR(lp_extremize(pinned(two, {0}, 0.3), std::vector<double>{1, 0}, Sense::Maximize).value, 0.3, 1e-12);
}

TEST(LpExtremize, MatchesVertexEnumeration) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = make_numbered_space(6);
    const auto phi = testgen::random_features(s, 2, rng);
    const auto c = testgen::random_constraints(phi, rng, trial % 3 == 0);
    std::vector<double> coeffs(6);
    for (double& v : coeffs) v = rng.normal();
    const auto& form = c.standard_form();
    std::vector<double> padded(form.cols, 0.0);
    std::copy(coeffs.begin(), coeffs.end(), padded.begin());
    for (Sense sense : {Sense::Minimize, Sense::Maximize}) {
      const auto got = lp_extremize(c, coeffs, sense);
      EXPECT_NEAR(got.value, vertex_enumeration(form, padded, sense == Sense::Maximize), 1e-9);
      EXPECT_LE(c.violation(got.optimizer), 1e-9);
    }
    const auto hi = lp_extremize(c, coeffs, Sense::Maximize).value;
    const auto lo = lp_extremize(c, coeffs, Sense::Minimize).value;
    EXPECT_GE(hi, lo - 1e-12);
    Rng walk(trial);
    for (const auto& p : hit_and_run(c, 200, walk)) {
      double v = 0.0;
      for (std::size_t x = 0; x < 6; ++x) v += coeffs[x] * p[x];
      EXPECT_LE(v, hi + 1e-9);
      EXPECT_GE(v, lo - 1e-9);
    }
  }
}

TEST(ConstraintSet, InfeasibleConstructionThrows) {
  auto s = make_numbered_space(2);
  try {
    ConstraintSet::create(ConstraintSpec(RandomVariable::scalar(s, {1, 2}), {3.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Infeasible);
  }
}

TEST(Support, Examples) {
  auto s = make_numbered_space(3);
  EXPECT_EQ(support(ConstraintSet::unconstrained(s)).outcomes, full_set(3));
  EXPECT_EQ(support(pinned(s, {0}, 1.0)).outcomes, (OutcomeSet{0}));
  EXPECT_EQ(support(pinned(s, {0}, 0.0)).outcomes, (OutcomeSet{1, 2}));
}

TEST(Support, AgreesWithPerOutcomeLp) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = make_numbered_space(3 + rng.below(6));
    const auto phi = testgen::random_features(s, 1 + rng.below(3), rng);
    const auto c = testgen::random_constraints(phi, rng, true);
    const auto sup = support(c);
    for (std::size_t x = 0; x < s->size(); ++x) {
      std::vector<double> e(s->size(), 0.0);
      e[x] = 1.0;
      const double mx = lp_extremize(c, e, Sense::Maximize).value;
      EXPECT_EQ(sup.contains(x), mx > c.config().support_tolerance) << "outcome " << x;
    }
  }
}

TEST(Condition, Examples) {
  auto s = make_numbered_space(3);
  const auto free = ConstraintSet::unconstrained(s);
  const auto z = RandomVariable::indicator(s, {0});
  EXPECT_EQ(support(condition(free, z, Value{1.0})).outcomes, (OutcomeSet{0}));
  const auto all = RandomVariable::constant(s, 1.0);
  EXPECT_EQ(support(condition(free, all, Value{1.0})).outcomes, full_set(3));

  auto die = make_numbered_space(6);
  const auto mean3 = ConstraintSet::create(ConstraintSpec(RandomVariable::scalar(die, {1, 2, 3, 4, 5, 6}), {3.0}));
  const auto parity = RandomVariable::scalar(die, {1, 0, 1, 0, 1, 0});
  const auto even = condition(mean3, parity, Value{0.0});
  EXPECT_EQ(support(even).outcomes, (OutcomeSet{1, 3, 5}));
  // Oracle: 0.5 at 2 and 0.5 at 4 has mean 3 and is even.
  EXPECT_TRUE(even.contains(Distribution(die, {0, 0.5, 0, 0.5, 0, 0})));
  EXPECT_THROW(condition(pinned(s, {0}, 0.5), z, Value{1.0}), Error);
}

TEST(Condition, SupportShrinks) {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = make_numbered_space(4 + rng.below(4));
    const auto c = testgen::random_constraints(testgen::random_features(s, 1, rng), rng, true);
    const auto z = testgen::random_features(s, 1, rng, 0, 1);
    const auto base = support(c);
    for (const auto& v : z.range()) {
      ConstraintSet cz = c;
      try {
        cz = condition(c, z, v);
      } catch (const Error&) {
        continue;
      }
      for (std::size_t x : support(cz).outcomes) {
        EXPECT_TRUE(base.contains(x));
        EXPECT_TRUE(values_equal(z.at(x), v));
      }
    }
  }
}

TEST(ConvexHull, TwoPointUnionInterval) {
  auto s = make_space({"0", "1"});
  const auto one = RandomVariable::indicator(s, {1});
  const auto d = DisjunctiveConstraint::from_specs({ConstraintSpec(one, {0.1}), ConstraintSpec(one, {0.95})});
  const auto hull = convex_hull(d);
  EXPECT_NEAR(lp_extremize(hull, std::vector<double>{0, 1}, Sense::Minimize).value, 0.1, 1e-12);
  EXPECT_NEAR(lp_extremize(hull, std::vector<double>{0, 1}, Sense::Maximize).value, 0.95, 1e-12);
  EXPECT_TRUE(hull.contains(Distribution(s, {0.5, 0.5})));
  EXPECT_FALSE(hull.contains(Distribution(s, {0.95, 0.05})));
}

TEST(ConvexHull, SingleBranchUnchanged) {
  auto s = make_numbered_space(4);
  Rng rng(14);
  const auto phi = testgen::random_features(s, 2, rng);
  const auto c = testgen::random_constraints(phi, rng);
  const auto hull = convex_hull(DisjunctiveConstraint({c}));
  for (int i = 0; i < 20; ++i) {
    std::vector<double> coeffs(4);
    for (double& v : coeffs) v = rng.normal();
    EXPECT_NEAR(lp_extremize(hull, coeffs, Sense::Maximize).value, lp_extremize(c, coeffs, Sense::Maximize).value, 1e-10);
  }
}

TEST(ConvexHull, ContainsEveryBranch) {
  Rng rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    auto s = make_numbered_space(5);
    std::vector<ConstraintSet> branches;
    for (int b = 0; b < 3; ++b) branches.push_back(testgen::random_constraints(testgen::random_features(s, 1, rng), rng));
    const auto hull = convex_hull(DisjunctiveConstraint(branches));
    for (const auto& b : branches) {
      Rng walk(trial);
      for (const auto& p : hit_and_run(b, 10, walk)) EXPECT_TRUE(hull.contains(p));
    }
  }
}

TEST(ConvexHull, OverlappingBranchesGiveUnion) {
  auto s = make_space({"0", "1"});
  const auto one = RandomVariable::indicator(s, {1});
  const auto a = ConstraintSet::create(ConstraintSpec(one, {0.2}, {Relation::AtLeast}));
  const auto b = ConstraintSet::create(ConstraintSpec(one, {0.5}, {Relation::AtLeast}));
  const auto hull = convex_hull(DisjunctiveConstraint({a, b}));
  EXPECT_NEAR(lp_extremize(hull, std::vector<double>{0, 1}, Sense::Minimize).value, 0.2, 1e-12);
  EXPECT_NEAR(lp_extremize(hull, std::vector<double>{0, 1}, Sense::Maximize).value, 1.0, 1e-12);
}

TEST(Disjunction, SkipsInfeasibleBranches) {
  auto s = make_space({"0", "1"});
  const auto x = RandomVariable::scalar(s, {0, 1});
  const auto d = DisjunctiveConstraint::from_specs({ConstraintSpec(x, {2.0}), ConstraintSpec(x, {0.4})});
  EXPECT_EQ(d.branches().size(), 1u);
  EXPECT_EQ(d.skipped(), (std::vector<std::size_t>{0}));
  EXPECT_THROW(DisjunctiveConstraint::from_specs({ConstraintSpec(x, {2.0})}), Error);
}
