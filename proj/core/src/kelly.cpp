#include "maxent/kelly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxent/errors.hpp"
#include "maxent/rng.hpp"
#include "maxent/solver.hpp"

namespace maxent {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::size_t draw(const std::vector<double>& cdf, Rng& rng) {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

std::vector<double> cumulative(const Distribution& p) {
  std::vector<double> cdf(p.size());
  double s = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) cdf[x] = (s += p[x]);
  cdf.back() = 1.0;
  // Outcomes of probability zero must never be drawn.
  for (std::size_t x = p.size(); x-- > 0;) {
    if (p[x] > 0.0) break;
    cdf[x] = 2.0;
  }
  return cdf;
}

}  // namespace

double payoff(const Measure& odds, std::size_t x) { return odds.total() / odds[x]; }

double expected_growth_rate(const Distribution& strategy, const Distribution& p_star,
                            const Measure& odds) {
  require_same_space(strategy.space(), p_star.space(), "expected_growth_rate");
  require_same_space(strategy.space(), odds.space(), "expected_growth_rate");
  double g = 0.0;
  for (std::size_t x = 0; x < p_star.size(); ++x) {
    if (p_star[x] <= 0.0) continue;
    if (strategy[x] <= 0.0) return kNegInf;
    g += p_star[x] * std::log(payoff(odds, x) * strategy[x]);
  }
  return g;
}

void KellyConfig::validate() const {
  require(rounds >= 1, ErrorCode::InvalidArgument, "kelly: rounds must be at least 1");
  require(trials >= 1, ErrorCode::InvalidArgument, "kelly: trials must be at least 1");
  require(!strategies.empty(), ErrorCode::InvalidArgument, "kelly: no strategies");
  require(initial_capital > 0.0 && std::isfinite(initial_capital), ErrorCode::InvalidArgument,
          "kelly: initial capital must be positive");
  require_same_space(odds.space(), true_dist.space(), "kelly");
  for (const auto& s : strategies) require_same_space(odds.space(), s.weights.space(), "kelly");
}

std::vector<std::size_t> draw_path(const KellyConfig& config, std::size_t trial) {
  config.validate();
  const auto cdf = cumulative(config.true_dist);
  Rng rng(config.seed, trial);
  std::vector<std::size_t> path(config.rounds);
  for (auto& x : path) x = draw(cdf, rng);
  return path;
}

KellyReport simulate(const KellyConfig& config) {
  config.validate();
  const std::size_t s = config.strategies.size();
  const std::size_t n = config.odds.size();
  const double log_k = std::log(config.initial_capital);

  // ln(b(x) P(x)) per strategy and outcome.
  std::vector<std::vector<double>> step(s, std::vector<double>(n));
  KellyReport r;
  for (std::size_t a = 0; a < s; ++a) {
    const auto& w = config.strategies[a].weights;
    r.names.push_back(config.strategies[a].name);
    r.expected_growth.push_back(expected_growth_rate(w, config.true_dist, config.odds));
    for (std::size_t x = 0; x < n; ++x) {
      step[a][x] = w[x] > 0.0 ? std::log(payoff(config.odds, x) * w[x]) : kNegInf;
    }
  }

  const auto cdf = cumulative(config.true_dist);
  r.final_log_capital.assign(config.trials, std::vector<double>(s, log_k));
  r.ruined.assign(s, 0);
  std::vector<double> sum(s, 0.0), sum_sq(s, 0.0);
  std::vector<std::size_t> count(s, 0);
  // last_behind[a][b]: last round at which a was not strictly ahead of b.
  std::vector<std::vector<std::size_t>> last_behind(s, std::vector<std::size_t>(s, 0));

  std::vector<double> level(s);
  for (std::size_t t = 0; t < config.trials; ++t) {
    Rng rng(config.seed, t);
    std::fill(level.begin(), level.end(), log_k);
    for (std::size_t round = 1; round <= config.rounds; ++round) {
      const std::size_t x = draw(cdf, rng);
      for (std::size_t a = 0; a < s; ++a) {
        if (level[a] == kNegInf) continue;
        const double g = step[a][x];
        level[a] += g;
        if (g != kNegInf) {
          sum[a] += g;
          sum_sq[a] += g * g;
          ++count[a];
        }
      }
      for (std::size_t a = 0; a < s; ++a) {
        for (std::size_t b = 0; b < s; ++b) {
          if (a != b && !(level[a] > level[b])) last_behind[a][b] = std::max(last_behind[a][b], round);
        }
      }
    }
    r.final_log_capital[t] = level;
    for (std::size_t a = 0; a < s; ++a) {
      if (level[a] == kNegInf) ++r.ruined[a];
    }
  }

  const double trials = static_cast<double>(config.trials);
  const double rounds = static_cast<double>(config.rounds);
  r.win.assign(s, std::vector<double>(s, 0.0));
  r.epsilon.assign(s, std::vector<double>(s, 0.0));
  r.first_separation.assign(s, std::vector<std::optional<std::size_t>>(s));
  for (std::size_t a = 0; a < s; ++a) {
    double total = 0.0;
    std::size_t alive = 0;
    for (const auto& row : r.final_log_capital) {
      if (row[a] == kNegInf) continue;
      total += (row[a] - log_k) / rounds;
      ++alive;
    }
    r.realized_growth_mean.push_back(alive ? total / static_cast<double>(alive) : kNegInf);
    const double c = static_cast<double>(count[a]);
    const double mean = c > 0 ? sum[a] / c : 0.0;
    r.per_round_stddev.push_back(c > 1 ? std::sqrt(std::max(0.0, (sum_sq[a] - c * mean * mean) / (c - 1)))
                                       : 0.0);
    for (std::size_t b = 0; b < s; ++b) {
      if (a == b) continue;
      double wins = 0.0;
      double eps = std::numeric_limits<double>::infinity();
      for (const auto& row : r.final_log_capital) {
        if (row[a] > row[b]) wins += 1.0;
        const double d = row[a] == kNegInf ? kNegInf
                         : row[b] == kNegInf ? std::numeric_limits<double>::infinity()
                                             : (row[a] - row[b]) / rounds;
        eps = std::min(eps, d);
      }
      r.win[a][b] = wins / trials;
      r.epsilon[a][b] = eps;
      if (last_behind[a][b] < config.rounds) r.first_separation[a][b] = last_behind[a][b] + 1;
    }
  }
  return r;
}

Distribution worst_case_growth_strategy(const ConstraintSet& c, const Measure& odds) {
  return solve_maxent(MaxEntProblem(odds, c)).distribution;
}

double worst_case_growth(const Distribution& strategy, const ConstraintSet& c, const Measure& odds) {
  require_same_space(strategy.space(), c.space(), "worst_case_growth");
  const Support sup = support(c);
  std::vector<double> coeffs(c.size(), 0.0);
  for (std::size_t x : sup.outcomes) {
    if (strategy[x] <= 0.0) return kNegInf;
    coeffs[x] = std::log(payoff(odds, x) * strategy[x]);
  }
  return lp_extremize(c, coeffs, Sense::Minimize).value;
}

GrowthCheck verify_worst_case_growth(const ConstraintSet& c, const Measure& odds,
                                     std::size_t perturbations, std::uint64_t seed) {
  const Distribution pme = worst_case_growth_strategy(c, odds);
  GrowthCheck out;
  out.maxent_value = worst_case_growth(pme, c, odds);
  out.best_perturbed = -std::numeric_limits<double>::infinity();
  out.perturbations = perturbations;
  Rng rng(seed, 0);
  for (std::size_t i = 0; i < perturbations; ++i) {
    std::vector<double> w(pme.probs());
    const double scale = std::pow(10.0, rng.uniform(-4.0, -1.0));
    for (double& v : w) v = std::max(0.0, v * std::exp(scale * rng.normal()));
    const Distribution q = Distribution::normalized(c.space(), std::move(w));
    const double g = worst_case_growth(q, c, odds);
    out.best_perturbed = std::max(out.best_perturbed, g);
    if (g > out.maxent_value + 1e-12) ++out.beaten_by;
  }
  return out;
}

}  // namespace maxent
