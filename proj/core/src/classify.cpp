#include "maxent/classify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <variant>

#include "maxent/errors.hpp"
#include "maxent/information.hpp"
#include "maxent/rng.hpp"

namespace maxent {

namespace {

constexpr std::size_t kMaxEnumeratedZ = 8;
constexpr std::size_t kCalibrationSamples = 20;
constexpr std::size_t kAgreementSamples = 50;
constexpr std::size_t kSearchAttempts = 1000;
constexpr double kAgreementTolerance = 1e-6;
constexpr double kSeparation = 1e-3;

// Outcomes of C with positive mass under P^me for every M; z-values whose
// fiber meets this set are the ones with a defined guess.
struct GuessContext {
  const ApplicationQuery& query;
  std::vector<Value> z_range;
  std::vector<OutcomeSet> z_fibers;
  double tol;

  explicit GuessContext(const ApplicationQuery& q)
      : query(q), tol(q.constraints.config().value_tolerance) {
    z_range = q.z.range(tol);
    for (const auto& v : z_range) z_fibers.push_back(q.z.fiber(v, tol));
  }

  Distribution solve(const Measure& m) const {
    return solve_maxent(MaxEntProblem(m, query.constraints)).distribution;
  }

  GuessTable table(const Distribution& p) const {
    GuessTable t;
    for (std::size_t i = 0; i < z_range.size(); ++i) {
      if (p.mass(z_fibers[i]) <= 0.0) continue;
      t.z_values.push_back(z_range[i]);
      t.guesses.push_back(conditional_expectation(p, query.y, query.z, z_range[i], tol));
    }
    return t;
  }
};

double table_difference(const GuessTable& a, const GuessTable& b, std::size_t* where = nullptr) {
  double worst = 0.0;
  const std::size_t n = std::min(a.guesses.size(), b.guesses.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < a.guesses[i].size(); ++j) {
      const double d = std::fabs(a.guesses[i][j] - b.guesses[i][j]);
      if (d > worst) {
        worst = d;
        if (where) *where = i;
      }
    }
  }
  return worst;
}

std::vector<Measure> family_samples(const MeasureFamily& family, std::size_t count,
                                    std::uint64_t seed, std::uint64_t stream) {
  std::vector<Measure> out{family.representative()};
  if (family.is_single()) return out;
  Rng rng(seed, stream);
  for (std::size_t i = 0; i < count; ++i) out.push_back(family.sample(rng));
  return out;
}

// ---------------------------------------------------------------- calibration

struct CalibrationContext {
  const ApplicationQuery& query;
  GuessContext guesses;
  std::vector<Distribution> pme;  // one per sampled measure, representative first
  std::map<OutcomeSet, CalibrationCell> memo;

  explicit CalibrationContext(const ApplicationQuery& q) : query(q), guesses(q) {
    for (const auto& m : family_samples(q.measures, kCalibrationSamples, q.seed, 1)) {
      pme.push_back(guesses.solve(m));
    }
  }

  Value conditional_on(const Distribution& p, const OutcomeSet& cell) const {
    Value e(query.y.dim(), 0.0);
    const double mass = p.mass(cell);
    for (std::size_t x : cell) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += p[x] * query.y.at(x, i);
    }
    for (double& v : e) v /= mass;
    return e;
  }

  const CalibrationCell& cell(const std::vector<std::size_t>& z_indices) {
    OutcomeSet outcomes;
    for (std::size_t i : z_indices) {
      outcomes.insert(outcomes.end(), guesses.z_fibers[i].begin(), guesses.z_fibers[i].end());
    }
    std::sort(outcomes.begin(), outcomes.end());
    auto found = memo.find(outcomes);
    if (found != memo.end()) return found->second;

    const ConstraintSet& c = query.constraints;
    const double tol = c.config().affine_tolerance;
    CalibrationCell cell;
    cell.outcomes = outcomes;
    for (std::size_t i : z_indices) cell.z_values.push_back(guesses.z_range[i]);

    std::vector<double> ind(c.size(), 0.0);
    for (std::size_t x : outcomes) ind[x] = 1.0;
    cell.min_probability = lp_extremize(c, ind, Sense::Minimize).value;
    cell.degenerate = cell.min_probability <= c.config().support_tolerance;

    bool defined = pme.front().mass(outcomes) > 0.0;
    if (defined) {
      cell.guess = conditional_on(pme.front(), outcomes);
      for (const auto& p : pme) {
        const Value cm = conditional_on(p, outcomes);
        for (std::size_t j = 0; j < cm.size(); ++j) {
          cell.measure_spread = std::max(cell.measure_spread, std::fabs(cm[j] - cell.guess[j]));
        }
        for (std::size_t i : z_indices) {
          if (p.mass(guesses.z_fibers[i]) <= 0.0) continue;
          const Value ez =
              conditional_expectation(p, query.y, query.z, guesses.z_range[i], guesses.tol);
          for (std::size_t j = 0; j < ez.size(); ++j) {
            cell.z_deviation = std::max(cell.z_deviation, std::fabs(ez[j] - cm[j]));
          }
        }
      }
    }
    if (!cell.degenerate && defined) {
      for (std::size_t j = 0; j < query.y.dim(); ++j) {
        std::vector<double> coeffs(c.size(), 0.0);
        for (std::size_t x : outcomes) coeffs[x] = query.y.at(x, j) - cell.guess[j];
        const double lo = lp_extremize(c, coeffs, Sense::Minimize).value;
        const double hi = lp_extremize(c, coeffs, Sense::Maximize).value;
        cell.lp_deviation = std::max({cell.lp_deviation, std::fabs(lo), std::fabs(hi)});
      }
    }
    // Degenerate cells skip the P* condition; the P^me equalities still apply.
    cell.passed = cell.measure_spread <= tol && cell.z_deviation <= tol &&
                  (cell.degenerate || cell.lp_deviation <= tol);
    return memo.emplace(outcomes, std::move(cell)).first->second;
  }

  CalibrationVerdict verdict(const std::vector<std::vector<std::size_t>>& blocks) {
    CalibrationVerdict out;
    out.measures_checked = pme.size();
    bool all = true;
    bool any_live = false;
    for (const auto& b : blocks) {
      const CalibrationCell& c = cell(b);
      all = all && c.passed;
      any_live = any_live || !c.degenerate;
      out.cells.push_back(c);
    }
    out.holds = all && any_live;
    if (all && !any_live) out.note = "every cell is degenerate; V certifies nothing";
    return out;
  }
};

// Every set partition of {0..m-1}, coarsest first, until visit returns true.
template <class Visit>
bool for_each_partition(std::size_t m, Visit visit) {
  std::vector<std::size_t> label(m, 0);
  auto recurse = [&](auto& self, std::size_t i, std::size_t blocks) -> bool {
    if (i == m) {
      std::vector<std::vector<std::size_t>> parts(blocks);
      for (std::size_t j = 0; j < m; ++j) parts[label[j]].push_back(j);
      return visit(parts);
    }
    for (std::size_t b = 0; b <= blocks && b < m; ++b) {
      label[i] = b;
      if (self(self, i + 1, std::max(blocks, b + 1))) return true;
    }
    return false;
  };
  return recurse(recurse, 0, 0);
}

// ---------------------------------------------------------- separating search

struct SearchResult {
  std::optional<SeparatingPair> pair;
  double best = 0.0;
};

std::vector<Measure> deterministic_candidates(const ApplicationQuery& q) {
  const auto& family = q.measures;
  const std::size_t n = q.constraints.size();
  const SpacePtr& s = q.constraints.space();
  std::vector<Measure> out;
  const auto y_fibers = q.y.fiber_index();
  std::vector<double> y_count(n, 0.0);
  for (std::size_t x = 0; x < n; ++x) ++y_count[y_fibers[x]];

  if (std::holds_alternative<MeasureFamily::AllMeasures>(family.kind())) {
    out.push_back(Measure::uniform(s));
    std::vector<double> w(n);
    for (std::size_t x = 0; x < n; ++x) w[x] = 1.0 / y_count[y_fibers[x]];
    out.emplace_back(s, w);
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<double> heavy(n, 1.0);
      heavy[x] = 20.0;
      out.emplace_back(s, heavy);
      std::vector<double> light(n, 1.0);
      light[x] = 0.05;
      out.emplace_back(s, light);
    }
  } else if (const auto* cw = std::get_if<MeasureFamily::CompatibleWith>(&family.kind())) {
    const auto fibers = cw->coarsening.fiber_index();
    std::vector<std::vector<std::size_t>> members(cw->reference.size());
    for (std::size_t x = 0; x < n; ++x) members[fibers[x]].push_back(x);
    // Even split over the Y-classes inside each fiber, then within each class.
    std::vector<double> w(n);
    for (const auto& f : members) {
      std::map<std::size_t, std::vector<std::size_t>> classes;
      for (std::size_t x : f) classes[y_fibers[x]].push_back(x);
      const double ref = cw->reference[fibers[f.front()]];
      for (const auto& [_, xs] : classes) {
        for (std::size_t x : xs) {
          w[x] = ref / static_cast<double>(classes.size()) / static_cast<double>(xs.size());
        }
      }
    }
    out.emplace_back(s, w);
    for (const auto& f : members) {
      if (f.size() < 2) continue;
      for (std::size_t heavy : f) {
        Measure base = family.representative();
        std::vector<double> v = base.weights();
        const double ref = cw->reference[fibers[heavy]];
        for (std::size_t x : f) {
          v[x] = x == heavy ? ref * (1.0 - 1e-3)
                            : ref * 1e-3 / static_cast<double>(f.size() - 1);
        }
        out.emplace_back(s, v);
      }
    }
  }
  return out;
}

// One coordinate move that keeps the measure inside the family.
Measure perturb(const MeasureFamily& family, const Measure& m, Rng& rng) {
  std::vector<double> w = m.weights();
  const std::size_t n = w.size();
  if (const auto* cw = std::get_if<MeasureFamily::CompatibleWith>(&family.kind())) {
    const auto fibers = cw->coarsening.fiber_index();
    std::vector<std::vector<std::size_t>> members(cw->reference.size());
    for (std::size_t x = 0; x < n; ++x) members[fibers[x]].push_back(x);
    std::vector<std::size_t> splittable;
    for (std::size_t f = 0; f < members.size(); ++f) {
      if (members[f].size() > 1) splittable.push_back(f);
    }
    if (splittable.empty()) return m;
    const auto& f = members[splittable[rng.below(splittable.size())]];
    const std::size_t a = f[rng.below(f.size())];
    std::size_t b = f[rng.below(f.size() - 1)];
    if (b == a) b = f.back();
    const double lo = -(1.0 - 1e-6) * w[b];
    const double hi = (1.0 - 1e-6) * w[a];
    const double delta = rng.uniform(lo, hi);
    w[a] -= delta;
    w[b] += delta;
  } else {
    const std::size_t x = rng.below(n);
    w[x] *= std::exp(rng.uniform(-3.0, 3.0));
  }
  return Measure(m.space(), std::move(w));
}

SearchResult separating_search(const ApplicationQuery& q, const GuessContext& ctx) {
  SearchResult out;
  const auto& family = q.measures;
  if (family.is_single()) return out;

  std::vector<Measure> seen;
  std::vector<GuessTable> tables;
  auto consider = [&](const Measure& m) {
    GuessTable t = ctx.table(ctx.solve(m));
    for (std::size_t i = 0; i < tables.size(); ++i) {
      std::size_t where = 0;
      const double d = table_difference(tables[i], t, &where);
      if (d > out.best) {
        out.best = d;
        if (d > kSeparation) {
          out.pair = SeparatingPair{seen[i], m, t.z_values[where], tables[i].guesses[where],
                                    t.guesses[where], d, seen.size() + 1};
        }
      }
    }
    seen.push_back(m);
    tables.push_back(std::move(t));
    return out.pair.has_value();
  };

  const Measure base = family.representative();
  if (consider(base)) return out;
  for (const auto& m : deterministic_candidates(q)) {
    if (consider(m)) return out;
  }
  Rng rng(q.seed, 2);
  Measure walk = base;
  for (std::size_t attempt = 0; attempt < kSearchAttempts; ++attempt) {
    if (attempt % 50 == 0) walk = base;
    walk = perturb(family, walk, rng);
    // Compare only against the base and the previous point to keep this linear.
    GuessTable t = ctx.table(ctx.solve(walk));
    std::size_t where = 0;
    const double d = table_difference(tables.front(), t, &where);
    out.best = std::max(out.best, d);
    if (d > kSeparation) {
      out.pair = SeparatingPair{base, walk, t.z_values[where], tables.front().guesses[where],
                                t.guesses[where], d, seen.size() + attempt + 1};
      return out;
    }
  }
  return out;
}

AgreementReport agreement(const ApplicationQuery& q, const GuessContext& ctx,
                          std::optional<SeparatingPair>* widest = nullptr) {
  AgreementReport r;
  const auto measures = family_samples(q.measures, kAgreementSamples, q.seed, 3);
  r.measures = measures.size();
  std::vector<GuessTable> tables;
  for (const auto& m : measures) tables.push_back(ctx.table(ctx.solve(m)));
  r.z_values = tables.front().z_values;
  r.table.assign(r.z_values.size(), {});
  for (const auto& t : tables) {
    for (std::size_t i = 0; i < r.z_values.size() && i < t.guesses.size(); ++i) {
      r.table[i].push_back(t.guesses[i].front());
    }
  }
  for (std::size_t k = 1; k < tables.size(); ++k) {
    std::size_t where = 0;
    const double d = table_difference(tables.front(), tables[k], &where);
    if (d > r.max_spread) {
      r.max_spread = d;
      if (widest && d > kSeparation) {
        *widest = SeparatingPair{measures.front(), measures[k], tables[k].z_values[where],
                                 tables.front().guesses[where], tables[k].guesses[where], d, k + 1};
      }
    }
  }
  return r;
}

bool coarsening_matches_phi(const MeasureFamily::CompatibleWith& cw, const ConstraintSet& c) {
  const RandomVariable phi = c.spec().phi();
  const OutcomeSet all = full_set(c.size());
  return static_cast<bool>(determines(phi, cw.coarsening, all)) &&
         static_cast<bool>(determines(cw.coarsening, phi, all));
}

}  // namespace

const char* to_string(ApplicationLevel level) noexcept {
  switch (level) {
    case ApplicationLevel::ConditionallyCorrect: return "conditionally-correct";
    case ApplicationLevel::ConditionallyCalibrated: return "conditionally-calibrated";
    case ApplicationLevel::WellDefined: return "well-defined";
    case ApplicationLevel::IllDefined: return "ill-defined";
  }
  return "?";
}

AffineTestResult affine_test(const RandomVariable& psi, const RandomVariable& phi,
                             const OutcomeSet& subset, double tolerance) {
  require_same_space(psi.space(), phi.space(), "affine_test");
  require(!subset.empty(), ErrorCode::InvalidArgument, "affine_test: empty subset");
  const auto n = static_cast<Eigen::Index>(subset.size());
  const auto k = static_cast<Eigen::Index>(phi.dim());
  Eigen::MatrixXd a(n, k + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, 0) = 1.0;
    for (Eigen::Index j = 0; j < k; ++j) a(i, j + 1) = phi.at(subset[i], j);
  }
  const auto cod = a.completeOrthogonalDecomposition();
  AffineTestResult out;
  AffineCertificate cert;
  for (std::size_t comp = 0; comp < psi.dim(); ++comp) {
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) b(i) = psi.at(subset[i], comp);
    const Eigen::VectorXd coef = cod.solve(b);
    const Eigen::VectorXd r = (a * coef - b).cwiseAbs();
    Eigen::Index worst = 0;
    const double res = r.maxCoeff(&worst);
    if (res >= out.residual) {
      out.residual = res;
      out.worst_outcome = subset[worst];
    }
    cert.coefficients.emplace_back(coef.data(), coef.data() + coef.size());
  }
  cert.residual = out.residual;
  if (out.residual <= tolerance) out.certificate = std::move(cert);
  return out;
}

RandomVariable constraint_features(const ConstraintSet& c) {
  const auto rows = c.rows();
  const std::size_t n = c.size();
  const std::size_t k = rows.size();
  std::vector<double> table(n * k);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t i = 0; i < k; ++i) table[x * k + i] = rows[i].coeffs[x];
  }
  return RandomVariable(c.space(), k, std::move(table));
}

CalibrationVerdict calibration_test(const ApplicationQuery& query, const RandomVariable& v) {
  require_same_space(v.space(), query.space(), "calibration_test");
  require(static_cast<bool>(determines(query.z, v, full_set(query.constraints.size()))),
          ErrorCode::ZNotDeterminingV, "Z does not determine V");
  CalibrationContext ctx(query);
  std::vector<std::vector<std::size_t>> blocks;
  for (const auto& value : v.range()) {
    const OutcomeSet f = v.fiber(value);
    std::vector<std::size_t> zs;
    for (std::size_t i = 0; i < ctx.guesses.z_fibers.size(); ++i) {
      if (std::binary_search(f.begin(), f.end(), ctx.guesses.z_fibers[i].front())) zs.push_back(i);
    }
    blocks.push_back(std::move(zs));
  }
  return ctx.verdict(blocks);
}

GuessTable guess_table(const ApplicationQuery& query, const Measure& m) {
  GuessContext ctx(query);
  return ctx.table(ctx.solve(m));
}

ApplicationClass classify(const ApplicationQuery& q) {
  require_same_space(q.y.space(), q.space(), "classify");
  require_same_space(q.z.space(), q.space(), "classify");
  require_same_space(q.measures.space(), q.space(), "classify");
  require(!q.constraints.is_lifted(), ErrorCode::InvalidArgument,
          "classify needs a constraint set given by rows, not a hull");
  const ConstraintSet& c = q.constraints;
  const SolverConfig& cfg = c.config();
  GuessContext ctx(q);
  ApplicationClass out;
  if (c.has_inequalities()) out.caveats.push_back("inequality-constraints");

  // (1) affine in phi over SUPP(C^(z)) for every feasible z.
  bool correct = true;
  std::size_t feasible = 0;
  std::vector<OutcomeSet> supports;
  for (const auto& z : ctx.z_range) {
    ConditionCell cell;
    cell.z = z;
    try {
      const ConstraintSet cz = condition(c, q.z, z);
      cell.feasible = true;
      cell.support = support(cz).outcomes;
      cell.affine = affine_test(q.y, constraint_features(cz), cell.support, cfg.affine_tolerance);
      for (std::size_t j = 0; j < q.y.dim(); ++j) {
        std::vector<double> coeffs(c.size());
        for (std::size_t x = 0; x < c.size(); ++x) coeffs[x] = q.y.at(x, j);
        cell.lp_min.push_back(lp_extremize(cz, coeffs, Sense::Minimize).value);
        cell.lp_max.push_back(lp_extremize(cz, coeffs, Sense::Maximize).value);
      }
      correct = correct && static_cast<bool>(*cell.affine);
      supports.push_back(cell.support);
      ++feasible;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Infeasible) throw;
      out.notes.push_back("C^(z) is empty for z = " + format_value(z) + "; skipped");
    }
    out.cells.push_back(std::move(cell));
  }
  if (feasible < ctx.z_range.size()) {
    // Skipped z can still carry mass under some P* in C.
    const Support sup = support(c);
    for (std::size_t i = 0; i < ctx.z_range.size(); ++i) {
      if (out.cells[i].feasible) continue;
      const auto& f = ctx.z_fibers[i];
      const bool reachable = std::any_of(f.begin(), f.end(), [&](std::size_t x) {
        return sup.contains(x);
      });
      if (reachable) {
        out.caveats.push_back("skipped-conditioning-values");
        break;
      }
    }
  }
  if (feasible == 0) {
    correct = false;
    out.notes.push_back("no conditioning value is feasible; correctness not certified");
  }

  auto check_agreement = [&] {
    if (q.measures.is_single() || out.agreement) return;
    out.agreement = agreement(q, ctx);
    if (out.agreement->max_spread > kAgreementTolerance &&
        std::find(out.caveats.begin(), out.caveats.end(), "hierarchy-inconsistent") ==
            out.caveats.end()) {
      out.caveats.push_back("hierarchy-inconsistent");
    }
  };

  if (correct) {
    out.level = ApplicationLevel::ConditionallyCorrect;
    // The certificate pins E[Y | Z=z] over C^(z); the guess conditions P^me
    // over C, which lands on the same value only when Z is trivial or the
    // conditioning happens to agree.
    const GuessTable own = ctx.table(ctx.solve(q.measures.representative()));
    double off = 0.0;
    for (std::size_t i = 0; i < own.z_values.size(); ++i) {
      for (const auto& cell : out.cells) {
        if (!cell.feasible || !values_equal(cell.z, own.z_values[i], ctx.tol)) continue;
        for (std::size_t j = 0; j < cell.lp_min.size(); ++j) {
          off = std::max(off, std::fabs(own.guesses[i][j] - cell.lp_min[j]));
        }
      }
    }
    if (off > cfg.affine_tolerance) {
      out.caveats.push_back("hierarchy-inconsistent");
      out.notes.push_back("P^me conditioned on Z misses the value certified over C^(z) by " +
                          format_value(std::vector<double>{off}));
    }
    check_agreement();
    return out;
  }

  // (2) some V coarsening Z passes the calibration test.
  {
    CalibrationContext cal(q);
    const std::size_t m = ctx.z_range.size();
    auto try_blocks = [&](const std::vector<std::vector<std::size_t>>& blocks) {
      CalibrationVerdict v = cal.verdict(blocks);
      if (!v.holds) return false;
      out.calibration = std::move(v);
      out.partition.clear();
      for (const auto& b : blocks) {
        std::vector<Value> zs;
        for (std::size_t i : b) zs.push_back(ctx.z_range[i]);
        out.partition.push_back(std::move(zs));
      }
      return true;
    };
    bool calibrated = false;
    if (m <= kMaxEnumeratedZ) {
      calibrated = for_each_partition(m, try_blocks);
    } else {
      out.notes.push_back("range(Z) has " + std::to_string(m) +
                          " values; only supplied calibration candidates are tried");
    }
    for (const auto& v : q.calibration_candidates) {
      if (calibrated) break;
      if (!determines(q.z, v, full_set(c.size()))) {
        out.notes.push_back("a calibration candidate is not determined by Z; ignored");
        continue;
      }
      std::vector<std::vector<std::size_t>> blocks;
      for (const auto& value : v.range()) {
        const OutcomeSet f = v.fiber(value);
        std::vector<std::size_t> zs;
        for (std::size_t i = 0; i < m; ++i) {
          if (std::binary_search(f.begin(), f.end(), ctx.z_fibers[i].front())) zs.push_back(i);
        }
        blocks.push_back(std::move(zs));
      }
      calibrated = try_blocks(blocks);
    }
    if (calibrated) {
      out.level = ApplicationLevel::ConditionallyCalibrated;
      if (!q.measures.is_single()) out.caveats.push_back("sampled-family");
      check_agreement();
      return out;
    }
  }

  // (3) well-defined, by family kind.
  const auto& kind = q.measures.kind();
  bool well_defined = false;
  if (q.measures.is_single()) {
    well_defined = true;
    out.notes.push_back("a single measure is always well-defined");
  } else if (const auto* cw = std::get_if<MeasureFamily::CompatibleWith>(&kind)) {
    std::optional<SeparatingPair> widest;
    out.agreement = agreement(q, ctx, &widest);
    const bool agree = out.agreement->max_spread <= kAgreementTolerance;
    if (coarsening_matches_phi(*cw, c)) {
      bool det = true;
      for (const auto& s : supports) det = det && static_cast<bool>(determines(c.spec().phi(), q.y, s));
      out.phi_determines_y = det;
      if (det && !agree) {
        out.caveats.push_back("corollary-disagreement");
        out.separation = widest;
      }
      well_defined = det && agree;
    } else {
      out.caveats.push_back("sampled-family");
      out.notes.push_back("family coarsening differs from phi; verdict rests on sampling");
      well_defined = agree;
      if (!agree) out.separation = widest;
    }
  } else {
    out.notes.push_back("all measures: well-defined only when conditionally correct");
  }
  if (well_defined) {
    out.level = ApplicationLevel::WellDefined;
    return out;
  }

  // (4) ill-defined; exhibit two measures whose guesses differ.
  out.level = ApplicationLevel::IllDefined;
  if (!out.separation) {
    SearchResult found = separating_search(q, ctx);
    out.search_difference = found.best;
    out.separation = std::move(found.pair);
  } else {
    out.search_difference = out.separation->difference;
  }
  if (!out.separation) out.caveats.push_back("separation-not-found");
  return out;
}

Guess guess(const ApplicationQuery& query, const Measure& m, std::span<const double> z) {
  require(query.measures.contains(m), ErrorCode::InvalidArgument,
          "guess: measure is not a member of the query's family");
  const Distribution p = solve_maxent(MaxEntProblem(m, query.constraints)).distribution;
  Value value = conditional_expectation(p, query.y, query.z, z,
                                        query.constraints.config().value_tolerance);
  return {std::move(value), classify(query)};
}

std::vector<DecisionClass> classify_losses(const ApplicationQuery& query, const LossTable& table) {
  const std::size_t n = query.constraints.size();
  const std::size_t d = table.decisions.size();
  require(table.loss.size() == n * d, ErrorCode::InvalidArgument,
          "loss table needs one entry per outcome and decision");
  std::vector<DecisionClass> out;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> psi(n);
    for (std::size_t x = 0; x < n; ++x) psi[x] = table.loss[x * d + j];
    ApplicationQuery q = query;
    q.y = RandomVariable::scalar(query.space(), std::move(psi));
    out.push_back({table.decisions[j], classify(q)});
  }
  return out;
}

}  // namespace maxent
