#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "generators.hpp"
#include "maxent/maxent.hpp"

using namespace maxent;

namespace {

KellyConfig coin_config(std::size_t rounds, std::size_t trials, std::uint64_t seed) {
  auto s = make_space({"1", "2"});
  return KellyConfig{Measure::uniform(s),
                     Distribution(s, {0.7, 0.3}),
                     {{"pstar", Distribution(s, {0.7, 0.3})},
                      {"uniform", Distribution::uniform(s)},
                      {"greedy", Distribution(s, {0.9, 0.1})}},
                     rounds,
                     trials,
                     seed};
}

}  // namespace

TEST(Growth, Examples) {
  auto s = make_space({"1", "2"});
  const auto odds = Measure::uniform(s);
  const Distribution p(s, {0.7, 0.3});
  const double closed = std::log(2.0) + 0.7 * std::log(0.7) + 0.3 * std::log(0.3);
  EXPECT_NEAR(expected_growth_rate(p, p, odds), closed, 1e-15);
  EXPECT_NEAR(closed, 0.08228, 1e-5);
  EXPECT_EQ(expected_growth_rate(Distribution::point_mass(s, 0), p, odds),
            -std::numeric_limits<double>::infinity());
  auto t = make_numbered_space(5);
  EXPECT_EQ(expected_growth_rate(Distribution::uniform(t), Distribution::uniform(t), Measure::uniform(t)), 0.0);
}

TEST(Growth, OddsFromMeasure) {
  auto s = make_space({"a", "b", "c"});
  const Measure odds(s, {1.0, 1.0, 2.0});
  EXPECT_DOUBLE_EQ(payoff(odds, 0), 4.0);
  EXPECT_DOUBLE_EQ(payoff(odds, 2), 2.0);
  // Growth and log-loss relative to the odds differ by ln M(Omega).
  Rng rng(61);
  for (int i = 0; i < 20; ++i) {
    const auto q = testgen::random_point(s, rng);
    const auto p = testgen::random_point(s, rng);
    EXPECT_NEAR(expected_growth_rate(q, p, odds), std::log(4.0) - expected_log_loss(p, q, odds), 1e-12);
  }
}

TEST(Simulate, SingleRoundIsExact) {
  auto cfg = coin_config(1, 20, 7);
  const auto report = simulate(cfg);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const std::size_t x = draw_path(cfg, t).at(0);
    for (std::size_t k = 0; k < cfg.strategies.size(); ++k) {
      EXPECT_EQ(report.final_log_capital[t][k], std::log(2.0 * cfg.strategies[k].weights[x]));
    }
  }
}

TEST(Simulate, LogCapitalRecomputes) {
  auto cfg = coin_config(500, 5, 8);
  cfg.initial_capital = 3.0;
  const auto report = simulate(cfg);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const auto path = draw_path(cfg, t);
    ASSERT_EQ(path.size(), cfg.rounds);
    for (std::size_t k = 0; k < cfg.strategies.size(); ++k) {
      double l = std::log(3.0);
      for (std::size_t x : path) l += std::log(payoff(cfg.odds, x) * cfg.strategies[k].weights[x]);
      EXPECT_NEAR(report.final_log_capital[t][k], l, 1e-9);
    }
  }
}

TEST(Simulate, Ruin) {
  auto s = make_space({"1", "2"});
  KellyConfig cfg{Measure::uniform(s), Distribution(s, {0.5, 0.5}),
                  {{"all-in", Distribution::point_mass(s, 0)}, {"half", Distribution::uniform(s)}}, 50, 10, 3};
  const auto report = simulate(cfg);
  EXPECT_EQ(report.ruined[0], 10u);  // 50 fair flips all landing on 1 is beyond reach
  EXPECT_EQ(report.ruined[1], 0u);
  for (const auto& row : report.final_log_capital) {
    EXPECT_EQ(row[0], -std::numeric_limits<double>::infinity());
    EXPECT_EQ(row[1], 0.0);
  }
  EXPECT_EQ(report.win[1][0], 1.0);
  EXPECT_EQ(report.win[0][1], 0.0);
}

TEST(Simulate, Reproducible) {
  const auto cfg = coin_config(300, 7, 99);
  const auto a = simulate(cfg);
  const auto b = simulate(cfg);
  EXPECT_EQ(a.final_log_capital, b.final_log_capital);
  EXPECT_EQ(a.win, b.win);
  EXPECT_EQ(a.first_separation, b.first_separation);
  EXPECT_NE(simulate(coin_config(300, 7, 100)).final_log_capital, a.final_log_capital);
}

TEST(Simulate, RealizedGrowthNearExpected) {
  const auto cfg = coin_config(10000, 30, 2026);
  const auto report = simulate(cfg);
  for (std::size_t k = 0; k < cfg.strategies.size(); ++k) {
    const double sigma = report.per_round_stddev[k];
    // Mean over trials of per-trial averages: the spread shrinks with trials too.
    const double bound = 3.0 * sigma / std::sqrt(static_cast<double>(cfg.rounds));
    EXPECT_NEAR(report.realized_growth_mean[k], report.expected_growth[k], bound) << report.names[k];
  }
}

TEST(Simulate, DominanceAndSeparation) {
  const auto cfg = coin_config(10000, 100, 20260101);
  const auto report = simulate(cfg);
  ASSERT_GT(report.expected_growth[0], report.expected_growth[1] + 0.01);
  ASSERT_GT(report.expected_growth[0], report.expected_growth[2] + 0.01);
  EXPECT_GE(report.win[0][1], 0.99);
  EXPECT_GE(report.win[0][2], 0.99);
  // When pstar leads everywhere, the empirical n0 and epsilon are meaningful.
  if (report.win[0][1] == 1.0) {
    ASSERT_TRUE(report.first_separation[0][1].has_value());
    EXPECT_LE(*report.first_separation[0][1], cfg.rounds);
    EXPECT_GT(report.epsilon[0][1], 0.0);
  }
}

TEST(Simulate, ConfigValidation) {
  auto cfg = coin_config(0, 1, 0);
  EXPECT_THROW(cfg.validate(), Error);
  cfg = coin_config(1, 0, 0);
  EXPECT_THROW(simulate(cfg), Error);
  cfg = coin_config(1, 1, 0);
  cfg.strategies.clear();
  EXPECT_THROW(simulate(cfg), Error);
}

TEST(WorstCaseStrategy, Examples) {
  auto s = make_numbered_space(3);
  const auto odds = Measure::uniform(s);
  const auto u = worst_case_growth_strategy(ConstraintSet::unconstrained(s), odds);
  EXPECT_LE(max_abs_difference(u, Distribution::uniform(s)), 1e-12);

  const auto c = ConstraintSet::create(ConstraintSpec(RandomVariable::indicator(s, {0}), {0.3}));
  const auto p = worst_case_growth_strategy(c, odds);
  EXPECT_NEAR(p[0], 0.3, 1e-9);
  EXPECT_NEAR(p[1], 0.35, 1e-9);
  EXPECT_NEAR(p[2], 0.35, 1e-9);
  // Brute force over the 2-simplex slice P(1) = 0.3.
  double best = -1e300;
  double arg = 0.0;
  for (int i = 1; i < 700; ++i) {
    const double a = i / 1000.0;
    const Distribution q(s, {0.3, a, 0.7 - a});
    const double g = worst_case_growth(q, c, odds);
    if (g > best) {
      best = g;
      arg = a;
    }
  }
  EXPECT_NEAR(arg, 0.35, 1e-3);

  auto b = make_space({"0", "1"});
  const auto one = RandomVariable::indicator(b, {1});
  const auto hull = convex_hull(DisjunctiveConstraint::from_specs({ConstraintSpec(one, {0.1}), ConstraintSpec(one, {0.95})}));
  const auto h = worst_case_growth_strategy(hull, Measure::uniform(b));
  EXPECT_NEAR(h[1], 0.5, 1e-9);
}

TEST(WorstCaseStrategy, EqualsLogNormalizerMinusEntropy) {
  Rng rng(62);
  for (int i = 0; i < 20; ++i) {
    auto s = make_numbered_space(3 + rng.below(5));
    const auto c = testgen::random_constraints(testgen::random_features(s, 1 + rng.below(2), rng), rng);
    const auto odds = testgen::random_measure(s, rng);
    const auto sol = solve_maxent(MaxEntProblem(odds, c));
    const double wc = worst_case_growth(sol.distribution, c, odds);
    EXPECT_NEAR(wc, std::log(odds.total()) - sol.entropy_value, 1e-8);
    // Every vertex sees the same growth rate.
    for (const auto& v : vertex_probes(c)) {
      EXPECT_NEAR(expected_growth_rate(sol.distribution, v, odds), wc, 1e-7);
    }
  }
}

TEST(WorstCaseStrategy, BeatsPerturbations) {
  Rng rng(63);
  for (int i = 0; i < 10; ++i) {
    auto s = make_numbered_space(3 + rng.below(4));
    const auto c = testgen::random_constraints(testgen::random_features(s, 2, rng), rng);
    const auto check = verify_worst_case_growth(c, testgen::random_measure(s, rng), 100, rng.next());
    EXPECT_EQ(check.perturbations, 100u);
    EXPECT_EQ(check.beaten_by, 0u);
    EXPECT_LE(check.best_perturbed, check.maxent_value + 1e-12);
  }
}
