#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <ostream>

#include "json.hpp"
#include "maxent/maxent.hpp"
#include "problem_file.hpp"

namespace maxent::cli {

namespace {

using Json = nlohmann::ordered_json;

class Writer {
 public:
  explicit Writer(int precision) : precision_(std::clamp(precision, 1, 17)) {}

  // Numbers are rounded once, here, so both output formats carry the same digits.
  Json num(double v) const {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision_, v);
    return std::strtod(buf, nullptr);
  }

  Json nums(const std::vector<double>& v) const {
    Json a = Json::array();
    for (double d : v) a.push_back(num(d));
    return a;
  }

  std::string text(const Json& j) const {
    if (j.is_number_float()) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.*g", precision_, j.get<double>());
      return buf;
    }
    if (j.is_number()) return j.dump();
    if (j.is_string()) return j.get<std::string>();
    if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
    if (j.is_null()) return "-";
    if (j.is_array()) {
      if (j.empty()) return "none";
      if (std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_string(); }) && j.size() > 1 &&
          std::any_of(j.begin(), j.end(), [](const Json& e) { return e.get<std::string>().find(' ') != std::string::npos; })) {
        std::string s;
        for (const auto& e : j) s += (s.empty() ? "" : "; ") + e.get<std::string>();
        return s;
      }
      std::string s;
      for (const auto& e : j) s += (s.empty() ? "" : " ") + text(e);
      return "(" + s + ")";
    }
    return j.dump();
  }

 private:
  int precision_;
};

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

bool is_flat(const Json& j) {
  if (is_scalar(j)) return true;
  return j.is_array() && std::all_of(j.begin(), j.end(), is_scalar);
}

bool is_table(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& row : j) {
    if (!row.is_object() || row.size() != j.front().size()) return false;
    auto a = row.begin();
    for (auto b = j.front().begin(); b != j.front().end(); ++a, ++b) {
      if (a.key() != b.key() || !is_flat(a.value())) return false;
    }
  }
  return true;
}

std::string title(std::string key) {
  std::replace(key.begin(), key.end(), '_', ' ');
  return key;
}

void render(std::ostream& out, const Json& j, std::size_t indent, const Writer& w);

void render_table(std::ostream& out, const Json& rows, std::size_t indent, const Writer& w) {
  std::vector<std::string> header;
  for (auto it = rows.front().begin(); it != rows.front().end(); ++it) header.push_back(title(it.key()));
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows) {
    auto& line = cells.emplace_back();
    std::size_t c = 0;
    for (auto it = row.begin(); it != row.end(); ++it, ++c) {
      line.push_back(w.text(it.value()));
      width[c] = std::max(width[c], line.back().size());
    }
  }
  auto emit = [&](const std::vector<std::string>& line) {
    out << std::string(indent, ' ');
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c + 1 < line.size()) {
        out << std::left << std::setw(static_cast<int>(width[c])) << line[c] << "  ";
      } else {
        out << line[c];
      }
    }
    out << '\n';
  };
  emit(header);
  for (const auto& line : cells) emit(line);
}

void render(std::ostream& out, const Json& j, std::size_t indent, const Writer& w) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    std::size_t key_width = 0;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (is_flat(it.value())) key_width = std::max(key_width, it.key().size());
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
      const Json& v = it.value();
      if (is_flat(v)) {
        out << pad << std::left << std::setw(static_cast<int>(key_width + 2)) << title(it.key()) + ":"
            << w.text(v) << '\n';
      } else if (v.is_object() && v.empty()) {
        continue;
      } else {
        out << pad << title(it.key()) << ":\n";
        if (is_table(v)) {
          render_table(out, v, indent + 2, w);
        } else {
          render(out, v, indent + 2, w);
        }
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (is_flat(j[i])) {
        out << pad << w.text(j[i]) << '\n';
      } else {
        out << pad << "[" << i + 1 << "]\n";
        render(out, j[i], indent + 2, w);
      }
    }
  } else {
    out << pad << w.text(j) << '\n';
  }
}

void emit(std::ostream& out, const Json& report, const Options& o) {
  if (o.format == Format::Structured) {
    out << report.dump(2) << '\n';
  } else {
    render(out, report, 0, Writer(o.precision));
  }
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NonConvergenceError& e) {
    err << "error: " << e.what() << " (residual " << e.residual() << ")\n";
    return kExitNonConvergence;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::Infeasible: return kExitInfeasible;
      case ErrorCode::NonConvergence: return kExitNonConvergence;
      case ErrorCode::VerificationFailed: return kExitVerification;
      default: return kExitUsage;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

Json labels(const SpacePtr& space, const OutcomeSet& set) {
  Json a = Json::array();
  for (std::size_t x : set) a.push_back(space->label(x));
  return a;
}

Json weights(const Writer& w, const SpacePtr& space, const std::vector<double>& v) {
  Json o = Json::object();
  for (std::size_t x = 0; x < v.size(); ++x) o[space->label(x)] = w.num(v[x]);
  return o;
}

Json distribution_table(const Writer& w, const Distribution& p) {
  Json rows = Json::array();
  for (std::size_t x = 0; x < p.size(); ++x) {
    rows.push_back({{"outcome", p.space()->label(x)}, {"probability", w.num(p[x])}});
  }
  return rows;
}

void add_solution(Json& r, const Writer& w, const MaxEntSolution& s) {
  r["distribution"] = distribution_table(w, s.distribution);
  r["entropy"] = w.num(s.entropy_value);
  r["dual"] = w.nums(s.dual);
  r["dual_residual"] = w.num(s.dual_residual);
  r["moment_residual"] = w.num(s.residual);
  r["support"] = labels(s.distribution.space(), s.restricted_support);
  r["method"] = to_string(s.method);
  r["iterations"] = s.iterations;
}

double union_worst_case(const Distribution& q, const DisjunctiveConstraint& d, const Measure& m) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& b : d.branches()) worst = std::max(worst, worst_case_loss(q, b, m).value);
  return worst;
}

std::vector<std::size_t> original_branch_indices(const DisjunctiveConstraint& d) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; out.size() < d.branches().size(); ++i) {
    if (std::find(d.skipped().begin(), d.skipped().end(), i) == d.skipped().end()) out.push_back(i);
  }
  return out;
}

const char* measure_note(const ProblemModel& m) {
  return m.measure_is_default() ? "uniform on the declared outcomes (default)" : "as declared";
}

Json value_json(const Writer& w, const Value& v) { return w.nums(v); }

}  // namespace

int cmd_solve(const std::string& path, const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProblemModel model(load_problem(path), o.config);
    const Writer w(o.precision);
    Json r;
    r["command"] = "solve";
    r["measure"] = measure_note(model);
    if (!model.has_branches()) {
      r["mode"] = "maxent";
      add_solution(r, w, solve_maxent(model.problem()));
      emit(out, r, o);
      return int{kExitOk};
    }
    const auto d = model.disjunction();
    const auto index = original_branch_indices(d);
    if (o.union_mode == UnionMode::Naive) {
      const auto detail = naive_maximin_detail(d, model.measure());
      const auto& s = detail.branches[detail.chosen];
      r["mode"] = "naive";
      r["chosen_branch"] = index[detail.chosen] + 1;
      Json e = Json::array();
      for (std::size_t b = 0; b < detail.branches.size(); ++b) {
        e.push_back({{"branch", index[b] + 1}, {"entropy", w.num(detail.branches[b].entropy_value)}});
      }
      r["branch_entropies"] = e;
      r["worst_case_loss"] = w.num(union_worst_case(s.distribution, d, model.measure()));
      add_solution(r, w, s);
    } else {
      const auto s = solve_minimax_union(d, model.measure());
      r["mode"] = "minimax";
      r["worst_case_loss"] = w.num(union_worst_case(s.distribution, d, model.measure()));
      add_solution(r, w, s);
    }
    if (!d.skipped().empty()) {
      Json skipped = Json::array();
      for (std::size_t i : d.skipped()) skipped.push_back(i + 1);
      r["infeasible_branches"] = skipped;
    }
    emit(out, r, o);
    return int{kExitOk};
  });
}

int cmd_verify(const std::string& path, const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProblemModel model(load_problem(path), o.config);
    const Writer w(o.precision);
    const double tol = model.config().saddle_tolerance;
    Json r;
    r["command"] = "verify";
    r["measure"] = measure_note(model);
    bool pass = true;
    if (model.has_branches()) {
      const auto d = model.disjunction();
      const auto u = verify_saddle(d, model.measure());
      const auto index = original_branch_indices(d);
      pass = std::fabs(u.gap) <= tol;
      r["kind"] = "union";
      r["maximin"] = w.num(u.maximin);
      r["minimax"] = w.num(u.minimax);
      r["gap"] = w.num(u.gap);
      r["naive_branch"] = index[u.naive_branch] + 1;
      r["naive_worst_case_loss"] = w.num(u.naive_worst_case);
      r["hull_minimax_verified"] = u.hull_verified;
      Json e = Json::array();
      for (std::size_t b = 0; b < u.branch_entropies.size(); ++b) {
        e.push_back({{"branch", index[b] + 1}, {"entropy", w.num(u.branch_entropies[b])}});
      }
      r["branch_entropies"] = e;
      r["minimax_distribution"] = distribution_table(w, u.minimax_solution.distribution);
      if (!pass) r["note"] = "the union is not convex, so the game need not have a saddle point";
    } else {
      const auto problem = model.problem();
      const auto s = verify_saddle(problem);
      Rng rng(o.seed.value_or(0), 0);
      const auto samples = hit_and_run(problem.constraints(), 100, rng);
      const double sampled = equalizer_residual(problem, s.solution, samples);
      const bool equalities = !problem.constraints().has_inequalities();
      pass = std::fabs(s.gap) <= tol && (!equalities || s.equalizer_spread <= tol);
      r["kind"] = "convex";
      r["maximin"] = w.num(s.maximin);
      r["minimax"] = w.num(s.minimax);
      r["gap"] = w.num(s.gap);
      r["equalizer_spread"] = w.num(s.equalizer_spread);
      r["vertices_probed"] = s.vertices;
      r["sampled_equalizer_residual"] = w.num(sampled);
      r["worst_case_witness"] = distribution_table(w, s.worst_case_witness);
      if (!equalities) {
        r["note"] = "inequality rows: the loss of P^me need not be constant on C, so the spread is reported but not checked";
      }
    }
    r["tolerance"] = w.num(tol);
    r["status"] = pass ? "pass" : "fail";
    emit(out, r, o);
    return int{pass ? kExitOk : kExitVerification};
  });
}

namespace {

Json classification_json(const Writer& w, const ApplicationQuery& q, const ApplicationClass& c,
                         const SpacePtr& space, bool full) {
  Json r;
  r["level"] = to_string(c.level);
  r["caveats"] = c.caveats;
  r["notes"] = c.notes;
  Json cells = Json::array();
  for (const auto& cell : c.cells) {
    Json j;
    j["z"] = value_json(w, cell.z);
    j["feasible"] = cell.feasible;
    j["support"] = labels(space, cell.support);
    if (cell.affine) {
      j["affine_residual"] = w.num(cell.affine->residual);
      if (cell.affine->certificate) {
        Json coeffs = Json::array();
        for (const auto& a : cell.affine->certificate->coefficients) coeffs.push_back(w.nums(a));
        j["affine_coefficients"] = coeffs;
      } else {
        j["worst_outcome"] = space->label(cell.affine->worst_outcome);
      }
    }
    j["lp_min"] = w.nums(cell.lp_min);
    j["lp_max"] = w.nums(cell.lp_max);
    cells.push_back(std::move(j));
  }
  r["cells"] = cells;
  if (c.calibration) {
    Json cal;
    cal["holds"] = c.calibration->holds;
    Json part = Json::array();
    for (const auto& block : c.partition) {
      Json b = Json::array();
      for (const auto& z : block) b.push_back(value_json(w, z));
      part.push_back(b);
    }
    cal["partition"] = part;
    cal["measures_checked"] = c.calibration->measures_checked;
    Json cc = Json::array();
    for (const auto& cell : c.calibration->cells) {
      cc.push_back({{"outcomes", labels(space, cell.outcomes)},
                    {"min_probability", w.num(cell.min_probability)},
                    {"degenerate", cell.degenerate},
                    {"guess", w.nums(cell.guess)},
                    {"lp_deviation", w.num(cell.lp_deviation)},
                    {"measure_spread", w.num(cell.measure_spread)},
                    {"passed", cell.passed}});
    }
    cal["cells"] = cc;
    if (!c.calibration->note.empty()) cal["note"] = c.calibration->note;
    r["calibration"] = cal;
  }
  if (c.phi_determines_y) r["phi_determines_y"] = *c.phi_determines_y;
  if (c.agreement) {
    const auto& a = *c.agreement;
    Json ag;
    ag["measures"] = a.measures;
    ag["max_spread"] = w.num(a.max_spread);
    Json rows = Json::array();
    for (std::size_t i = 0; i < a.z_values.size(); ++i) {
      const auto& t = a.table[i];
      const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
      Json row{{"z", value_json(w, a.z_values[i])},
               {"min_guess", w.num(t.empty() ? 0.0 : *lo)},
               {"max_guess", w.num(t.empty() ? 0.0 : *hi)}};
      if (full) row["guesses"] = w.nums(t);
      rows.push_back(std::move(row));
    }
    ag["table"] = rows;
    r["agreement"] = ag;
  }
  if (c.separation) {
    const auto& s = *c.separation;
    r["separation"] = {{"z", value_json(w, s.z)},
                       {"first_measure", weights(w, space, s.first.weights())},
                       {"first_guess", w.nums(s.guess_first)},
                       {"second_measure", weights(w, space, s.second.weights())},
                       {"second_guess", w.nums(s.guess_second)},
                       {"difference", w.num(s.difference)},
                       {"attempts", s.attempts}};
  }
  if (c.level == ApplicationLevel::IllDefined) r["search_difference"] = w.num(c.search_difference);
  const auto table = guess_table(q, q.measures.representative());
  Json g = Json::array();
  for (std::size_t i = 0; i < table.z_values.size(); ++i) {
    g.push_back({{"z", value_json(w, table.z_values[i])}, {"guess", w.nums(table.guesses[i])}});
  }
  r["representative_guesses"] = g;
  return r;
}

}  // namespace

int cmd_classify(const std::string& path, const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProblemModel model(load_problem(path), o.config);
    require(!model.file().queries.empty(), ErrorCode::InvalidArgument, "the file has no [query] section");
    const Writer w(o.precision);
    Json r;
    r["command"] = "classify";
    Json queries = Json::array();
    for (std::size_t i = 0; i < model.file().queries.size(); ++i) {
      auto q = model.query(i);
      if (o.seed) q.seed = *o.seed;
      const auto& def = model.file().queries[i];
      Json j;
      j["query"] = def.name.empty() ? std::to_string(i + 1) : def.name;
      j["y"] = def.y;
      j["z"] = def.z.value_or("(trivial)");
      j["family"] = q.measures.kind_name();
      j.update(classification_json(w, q, classify(q), model.space(), o.format == Format::Structured));
      queries.push_back(std::move(j));
    }
    r["queries"] = queries;
    emit(out, r, o);
    return int{kExitOk};
  });
}

int cmd_shift(const std::string& path, const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProblemModel model(load_problem(path), o.config);
    const Writer w(o.precision);
    const auto shift = model.shift();
    const auto problem = model.problem();
    const auto v = validate_shift(shift, problem);
    Json r;
    r["command"] = "shift";
    r["valid"] = v.valid;
    r["original_surjective"] = v.original_surjective;
    r["new_surjective"] = v.new_surjective;
    if (v.determination_counterexample) {
      r["determination_counterexample"] = {shift.underlying()->label(v.determination_counterexample->first),
                                           shift.underlying()->label(v.determination_counterexample->second)};
    }
    if (v.measures_compatible) {
      r["measures_compatible"] = *v.measures_compatible;
      r["compatibility_margin"] = w.num(v.compatibility_margin);
    }
    if (!v.reason.empty()) r["reason"] = v.reason;
    const auto& checks = model.file().shift->checks;
    if (v.valid && !checks.empty()) {
      if (!shift.new_measure()) {
        r["note"] = "no new_measure given; invariance checks skipped";
      } else {
        Json all = Json::array();
        double worst = 0.0;
        for (const auto& name : checks) {
          const auto inv = check_invariance(shift, problem, model.variable(name));
          Json rows = Json::array();
          for (const auto& row : inv.rows) {
            rows.push_back({{"y", value_json(w, row.y)},
                            {"original", w.num(row.original)},
                            {"shifted", w.num(row.shifted)}});
          }
          all.push_back({{"variable", name}, {"max_discrepancy", w.num(inv.max_discrepancy)}, {"rows", rows}});
          worst = std::max(worst, inv.max_discrepancy);
        }
        r["max_discrepancy"] = w.num(worst);
        r["checks"] = all;
      }
    }
    emit(out, r, o);
    return int{v.valid ? kExitOk : kExitVerification};
  });
}

int cmd_kelly(const std::string& path, const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProblemModel model(load_problem(path), o.config);
    const Writer w(o.precision);
    auto config = model.kelly();
    if (o.seed) config.seed = *o.seed;
    const auto rep = simulate(config);
    const std::size_t s = rep.names.size();
    Json r;
    r["command"] = "kelly";
    r["odds"] = model.measure_is_default() ? "uniform" : "from the measure";
    r["rounds"] = config.rounds;
    r["trials"] = config.trials;
    r["seed"] = config.seed;
    r["initial_capital"] = w.num(config.initial_capital);
    Json strategies = Json::array();
    for (std::size_t a = 0; a < s; ++a) {
      strategies.push_back({{"strategy", rep.names[a]},
                            {"weights", w.nums(config.strategies[a].weights.probs())},
                            {"expected_growth", w.num(rep.expected_growth[a])},
                            {"realized_growth", w.num(rep.realized_growth_mean[a])},
                            {"per_round_sd", w.num(rep.per_round_stddev[a])},
                            {"ruined", rep.ruined[a]}});
    }
    r["strategies"] = strategies;
    Json win = Json::array(), sep = Json::array(), eps = Json::array();
    for (std::size_t a = 0; a < s; ++a) {
      Json wr{{"strategy", rep.names[a]}}, sr{{"strategy", rep.names[a]}}, er{{"strategy", rep.names[a]}};
      for (std::size_t b = 0; b < s; ++b) {
        const std::string key = "vs_" + rep.names[b];
        wr[key] = a == b ? Json(nullptr) : w.num(rep.win[a][b]);
        sr[key] = a == b || !rep.first_separation[a][b] ? Json(nullptr) : Json(*rep.first_separation[a][b]);
        er[key] = a == b ? Json(nullptr) : w.num(rep.epsilon[a][b]);
      }
      win.push_back(wr);
      sep.push_back(sr);
      eps.push_back(er);
    }
    r["win_fraction"] = win;
    r["first_separation_round"] = sep;
    r["epsilon"] = eps;
    if (o.format == Format::Structured) {
      Json finals = Json::array();
      for (const auto& row : rep.final_log_capital) finals.push_back(w.nums(row));
      r["final_log_capital"] = finals;
    }
    emit(out, r, o);
    return int{kExitOk};
  });
}

namespace {

Json demo_bertrand(const Writer& w, const SolverConfig& config) {
  const auto fine = make_space({"1", "2", "3"});
  const auto coarse = make_space({"{1}", "{2,3}"});
  struct Case {
    const char* space;
    const char* measure;
    Measure m;
    double expected;
  };
  const std::vector<Case> cases{
      {"fine {1,2,3}", "uniform", Measure::uniform(fine), 1.0 / 3.0},
      {"coarse {{1},{2,3}}", "uniform", Measure::uniform(coarse), 0.5},
      {"coarse {{1},{2,3}}", "(1, 2)", Measure(coarse, {1.0, 2.0}), 1.0 / 3.0},
  };
  Json rows = Json::array();
  bool ok = true;
  for (const auto& c : cases) {
    const auto p = solve_maxent(MaxEntProblem(c.m, ConstraintSet::unconstrained(c.m.space(), config)));
    const double got = p.distribution[0];
    ok = ok && std::fabs(got - c.expected) <= 1e-9;
    rows.push_back({{"space", c.space},
                    {"measure", c.measure},
                    {"P_of_1", w.num(got)},
                    {"expected", w.num(c.expected)}});
  }
  Json r;
  r["command"] = "demo";
  r["demo"] = "bertrand";
  r["question"] = "probability that X = 1 with no constraints";
  r["results"] = rows;
  r["matches_expected"] = ok;
  return r;
}

Json demo_disjunctive(const Writer& w, const SolverConfig& config) {
  const auto space = make_space({"0", "1"});
  const auto m = Measure::uniform(space);
  const auto one = RandomVariable::indicator(space, {1});
  const auto d = DisjunctiveConstraint::from_specs(
      {ConstraintSpec(one, {0.1}), ConstraintSpec(one, {0.95})}, config);
  const auto minimax = solve_minimax_union(d, m);
  const auto naive = naive_maximin_union(d, m);
  const double minimax_loss = union_worst_case(minimax.distribution, d, m);
  const double naive_loss = union_worst_case(naive.distribution, d, m);
  Json r;
  r["command"] = "demo";
  r["demo"] = "disjunctive";
  r["constraint"] = "P(X=1) = 0.1 or P(X=1) = 0.95";
  r["results"] = Json::array({
      {{"strategy", "minimax"},
       {"P_X_is_1", w.num(minimax.distribution[1])},
       {"expected", w.num(0.5)},
       {"worst_case_loss", w.num(minimax_loss)}},
      {{"strategy", "naive maximin"},
       {"P_X_is_1", w.num(naive.distribution[1])},
       {"expected", w.num(0.1)},
       {"worst_case_loss", w.num(naive_loss)}},
  });
  r["loss_margin"] = w.num(naive_loss - minimax_loss);
  r["matches_expected"] = std::fabs(minimax.distribution[1] - 0.5) <= 1e-9 &&
                          std::fabs(naive.distribution[1] - 0.1) <= 1e-9 && naive_loss > minimax_loss;
  return r;
}

}  // namespace

int cmd_demo(const std::string& name, const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Writer w(o.precision);
    Json r;
    if (name == "bertrand") {
      r = demo_bertrand(w, o.config);
    } else if (name == "disjunctive") {
      r = demo_disjunctive(w, o.config);
    } else {
      err << "error: unknown demo '" << name << "' (expected bertrand or disjunctive)\n";
      return int{kExitUsage};
    }
    emit(out, r, o);
    return int{kExitOk};
  });
}

}  // namespace maxent::cli
