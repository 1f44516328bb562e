#include "problem_file.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace maxent::cli {

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column,
                       const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string text;
  std::size_t column = 0;
};

struct Entry {
  std::size_t line = 0;
  std::vector<Token> key;
  Token op;
  std::vector<Token> values;
};

struct Section {
  std::size_t line = 0;
  std::size_t column = 1;
  std::string kind;
  std::optional<Token> argument;
  std::vector<Entry> entries;
};

bool is_operator(const std::string& s) { return s == "=" || s == ">=" || s == ":"; }

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '=' || c == ':') {
      out.push_back({std::string(1, c), i + 1});
      ++i;
      continue;
    }
    if (c == '>' && i + 1 < line.size() && line[i + 1] == '=') {
      out.push_back({">=", i + 1});
      i += 2;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '=' &&
           line[i] != ':' && !(line[i] == '>' && i + 1 < line.size() && line[i + 1] == '=')) {
      ++i;
    }
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, std::string source) : source_(std::move(source)) { split(text); }

  ProblemFile run() {
    const Section* space = nullptr;
    for (const auto& s : sections_) {
      if (s.kind == "space") {
        if (space) error(s.line, s.column, "duplicate [space] section");
        space = &s;
      }
    }
    if (!space) error(1, 1, "missing [space] section");
    parse_space(*space);
    for (const auto& s : sections_) {
      if (s.kind == "variable") parse_variable(s);
    }
    bool have_measure = false, have_constraints = false;
    for (const auto& s : sections_) {
      if (s.kind == "space" || s.kind == "variable") continue;
      if (s.kind == "measure") {
        if (have_measure) error(s.line, s.column, "duplicate [measure] section");
        have_measure = true;
        parse_measure(s);
      } else if (s.kind == "constraints") {
        if (have_constraints) error(s.line, s.column, "duplicate [constraints] section");
        have_constraints = true;
        file_.constraints = parse_rows(s);
      } else if (s.kind == "branch") {
        file_.branches.push_back(parse_rows(s));
      } else if (s.kind == "shift") {
        if (file_.shift) error(s.line, s.column, "duplicate [shift] section");
        parse_shift(s);
      } else if (s.kind == "query") {
        parse_query(s);
      } else if (s.kind == "kelly") {
        if (file_.kelly) error(s.line, s.column, "duplicate [kelly] section");
        parse_kelly(s);
      } else {
        error(s.line, s.column, "unknown section [" + s.kind + "]");
      }
    }
    return std::move(file_);
  }

 private:
  [[noreturn]] void error(std::size_t line, std::size_t column, const std::string& message) const {
    throw ParseError(source_, line, column, message);
  }
  [[noreturn]] void error(std::size_t line, const Token& t, const std::string& message) const {
    error(line, t.column, message);
  }

  void split(std::string_view text) {
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t end = std::min(text.find('\n', pos), text.size());
      std::string line(text.substr(pos, end - pos));
      pos = end + 1;
      ++number;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos) {
        if (end == text.size()) break;
        continue;
      }
      if (line[first] == '[') {
        const auto close = line.find(']', first);
        if (close == std::string::npos) error(number, first + 1, "unterminated section header");
        if (line.find_first_not_of(" \t", close + 1) != std::string::npos) {
          error(number, line.find_first_not_of(" \t", close + 1) + 1,
                "unexpected text after section header");
        }
        auto inner = tokenize(line.substr(first + 1, close - first - 1));
        if (inner.empty()) error(number, first + 1, "empty section header");
        if (inner.size() > 2) error(number, first + 1 + inner[2].column, "too many words in section header");
        Section s;
        s.line = number;
        s.column = first + 1;
        s.kind = inner[0].text;
        if (inner.size() == 2) {
          inner[1].column += first + 1;
          s.argument = inner[1];
        }
        sections_.push_back(std::move(s));
      } else {
        if (sections_.empty()) error(number, first + 1, "entry outside of any section");
        auto tokens = tokenize(line);
        Entry e;
        e.line = number;
        auto op = std::find_if(tokens.begin(), tokens.end(), [](const Token& t) { return is_operator(t.text); });
        if (op == tokens.end()) error(number, first + 1, "expected 'key = value' or 'label : values'");
        if (op == tokens.begin()) error(number, op->column, "missing key before '" + op->text + "'");
        e.key.assign(tokens.begin(), op);
        e.op = *op;
        e.values.assign(op + 1, tokens.end());
        for (const auto& t : e.values) {
          if (is_operator(t.text)) error(number, t.column, "unexpected '" + t.text + "'");
        }
        sections_.back().entries.push_back(std::move(e));
      }
      if (end == text.size()) break;
    }
  }

  double number(const Entry& e, const Token& t) const {
    const std::string& s = t.text;
    auto parse = [&](std::string_view part) {
      double v = 0.0;
      const char* b = part.data();
      const char* end = b + part.size();
      if (b != end && *b == '+') ++b;
      auto [ptr, ec] = std::from_chars(b, end, v);
      if (ec != std::errc() || ptr != end || !std::isfinite(v)) error(e.line, t, "invalid number '" + s + "'");
      return v;
    };
    if (const auto slash = s.find('/'); slash != std::string::npos) {
      const double den = parse(std::string_view(s).substr(slash + 1));
      if (den == 0.0) error(e.line, t, "zero denominator in '" + s + "'");
      return parse(std::string_view(s).substr(0, slash)) / den;
    }
    return parse(s);
  }

  std::vector<double> numbers(const Entry& e) const {
    if (e.values.empty()) error(e.line, e.op.column + 1, "expected at least one number");
    std::vector<double> out;
    for (const auto& t : e.values) out.push_back(number(e, t));
    return out;
  }

  std::size_t count(const Entry& e, const Token& t) const {
    const double v = number(e, t);
    if (v < 0.0 || v != std::floor(v) || v > 9.0e15) error(e.line, t, "expected a non-negative integer");
    return static_cast<std::size_t>(v);
  }

  void expect_single(const Entry& e) const {
    if (e.values.size() != 1) {
      error(e.line, e.values.empty() ? e.op.column + 1 : e.values[1].column, "expected exactly one value");
    }
  }

  void expect_key(const Entry& e, const char* what) const {
    if (e.key.size() != 1) error(e.line, e.key[1], std::string("unexpected word in ") + what);
  }

  std::size_t outcome(const Entry& e, const Token& t) const {
    auto it = label_index_.find(t.text);
    if (it == label_index_.end()) error(e.line, t, "unknown outcome '" + t.text + "'");
    return it->second;
  }

  void parse_space(const Section& s) {
    if (s.argument) error(s.line, *s.argument, "[space] takes no name");
    for (const auto& e : s.entries) {
      expect_key(e, "[space]");
      if (e.key[0].text != "outcomes" || e.op.text != "=") error(e.line, e.key[0], "expected 'outcomes = labels'");
      if (!file_.outcomes.empty()) error(e.line, e.key[0], "outcomes declared twice");
      if (e.values.empty()) error(e.line, e.op.column + 1, "the space needs at least one outcome");
      for (const auto& t : e.values) {
        if (t.text.find_first_of("[]/") != std::string::npos) error(e.line, t, "outcome labels may not contain '[', ']' or '/'");
        if (!label_index_.emplace(t.text, file_.outcomes.size()).second) {
          error(e.line, t, "duplicate outcome '" + t.text + "'");
        }
        file_.outcomes.push_back(t.text);
      }
    }
    if (file_.outcomes.empty()) error(s.line, s.column, "[space] declares no outcomes");
  }

  void parse_measure(const Section& s) {
    if (s.argument) error(s.line, *s.argument, "[measure] takes no name");
    const std::size_t n = file_.outcomes.size();
    std::vector<double> w(n, 0.0);
    std::vector<bool> seen(n, false);
    bool listed = false;
    for (const auto& e : s.entries) {
      expect_key(e, "[measure]");
      if (e.op.text == "=" && e.key[0].text == "weights") {
        if (listed) error(e.line, e.key[0], "weights declared twice");
        listed = true;
        auto v = numbers(e);
        if (v.size() != n) error(e.line, e.values.front(), "expected " + std::to_string(n) + " weights");
        for (std::size_t x = 0; x < n; ++x) {
          w[x] = v[x];
          seen[x] = true;
        }
      } else if (e.op.text == ":") {
        const std::size_t x = outcome(e, e.key[0]);
        if (seen[x]) error(e.line, e.key[0], "weight for '" + e.key[0].text + "' given twice");
        expect_single(e);
        w[x] = number(e, e.values[0]);
        seen[x] = true;
      } else {
        error(e.line, e.key[0], "expected 'weights = ...' or 'label : weight'");
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (!seen[x]) error(s.line, s.column, "no weight for outcome '" + file_.outcomes[x] + "'");
      if (!(w[x] > 0.0)) error(s.line, s.column, "measure weights must be positive");
    }
    file_.measure = std::move(w);
  }

  void parse_variable(const Section& s) {
    if (!s.argument) error(s.line, s.column, "[variable] needs a name");
    const std::string& name = s.argument->text;
    if (name.find_first_of("[]") != std::string::npos) error(s.line, *s.argument, "invalid variable name");
    if (std::any_of(file_.variables.begin(), file_.variables.end(), [&](const VariableDef& v) { return v.name == name; })) {
      error(s.line, *s.argument, "variable '" + name + "' defined twice");
    }
    const std::size_t n = file_.outcomes.size();
    VariableDef v;
    v.name = name;
    std::optional<std::size_t> dim;
    std::vector<std::optional<std::vector<double>>> rows(n);
    for (const auto& e : s.entries) {
      expect_key(e, "[variable]");
      const std::string& key = e.key[0].text;
      if (e.op.text == ":") {
        const std::size_t x = outcome(e, e.key[0]);
        if (rows[x]) error(e.line, e.key[0], "value for '" + key + "' given twice");
        rows[x] = numbers(e);
      } else if (e.op.text != "=") {
        error(e.line, e.op, "unexpected '" + e.op.text + "'");
      } else if (key == "dim") {
        expect_single(e);
        dim = count(e, e.values[0]);
        if (*dim == 0) error(e.line, e.values[0], "dim must be at least 1");
      } else if (key == "values") {
        auto vals = numbers(e);
        if (vals.size() != n) error(e.line, e.values.front(), "expected " + std::to_string(n) + " values");
        for (std::size_t x = 0; x < n; ++x) {
          if (rows[x]) error(e.line, e.key[0], "value for '" + file_.outcomes[x] + "' given twice");
          rows[x] = std::vector<double>{vals[x]};
        }
      } else if (key == "indicator") {
        std::vector<bool> in(n, false);
        for (const auto& t : e.values) in[outcome(e, t)] = true;
        for (std::size_t x = 0; x < n; ++x) {
          if (rows[x]) error(e.line, e.key[0], "value for '" + file_.outcomes[x] + "' given twice");
          rows[x] = std::vector<double>{in[x] ? 1.0 : 0.0};
        }
      } else {
        error(e.line, e.key[0], "unknown key '" + key + "' in [variable]");
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (!rows[x]) error(s.line, s.column, "variable '" + name + "' has no value for '" + file_.outcomes[x] + "'");
      if (!dim) dim = rows[x]->size();
      if (rows[x]->size() != *dim) {
        error(s.line, s.column, "variable '" + name + "': value for '" + file_.outcomes[x] + "' has the wrong length");
      }
      v.table.insert(v.table.end(), rows[x]->begin(), rows[x]->end());
    }
    v.dim = *dim;
    file_.variables.push_back(std::move(v));
  }

  const VariableDef* find_variable(const std::string& name) const {
    for (const auto& v : file_.variables) {
      if (v.name == name) return &v;
    }
    return nullptr;
  }

  const VariableDef& need_variable(std::size_t line, const Token& t) const {
    const VariableDef* v = find_variable(t.text);
    if (!v) error(line, t, "unknown variable '" + t.text + "'");
    return *v;
  }

  std::vector<RowDef> parse_rows(const Section& s) {
    if (s.argument) error(s.line, *s.argument, "[" + s.kind + "] takes no name");
    std::vector<RowDef> rows;
    for (const auto& e : s.entries) {
      expect_key(e, "a constraint row");
      if (e.op.text == ":") error(e.line, e.op, "constraint rows use '=' or '>='");
      RowDef r;
      std::string key = e.key[0].text;
      Token name_token = e.key[0];
      if (const auto open = key.find('['); open != std::string::npos) {
        if (key.back() != ']') error(e.line, e.key[0], "malformed component index");
        Token index{key.substr(open + 1, key.size() - open - 2), e.key[0].column + open + 1};
        r.component = count(e, index);
        name_token.text = key.substr(0, open);
      }
      const VariableDef& v = need_variable(e.line, name_token);
      r.variable = v.name;
      r.relation = e.op.text == ">=" ? Relation::AtLeast : Relation::Equal;
      r.target = numbers(e);
      if (r.component && *r.component >= v.dim) {
        error(e.line, e.key[0], "component out of range for '" + v.name + "'");
      }
      const std::size_t want = r.component ? 1 : v.dim;
      if (r.target.size() != want) {
        error(e.line, e.values.front(), "expected " + std::to_string(want) + " target value(s)");
      }
      rows.push_back(std::move(r));
    }
    return rows;
  }

  void parse_shift(const Section& s) {
    if (s.argument) error(s.line, *s.argument, "[shift] takes no name");
    ShiftDef d;
    std::map<std::string, std::size_t> v_index, w_index;
    std::vector<const Entry*> maps;
    for (const auto& e : s.entries) {
      expect_key(e, "[shift]");
      const std::string& key = e.key[0].text;
      if (e.op.text == ":") {
        maps.push_back(&e);
        continue;
      }
      if (e.op.text != "=") error(e.line, e.op, "unexpected '" + e.op.text + "'");
      if (key == "underlying" || key == "new") {
        auto& labels = key == "underlying" ? d.underlying : d.new_outcomes;
        auto& index = key == "underlying" ? v_index : w_index;
        if (!labels.empty()) error(e.line, e.key[0], "'" + key + "' declared twice");
        if (e.values.empty()) error(e.line, e.op.column + 1, "expected outcome labels");
        for (const auto& t : e.values) {
          if (!index.emplace(t.text, labels.size()).second) error(e.line, t, "duplicate label '" + t.text + "'");
          labels.push_back(t.text);
        }
      } else if (key == "new_measure") {
        if (d.new_measure) error(e.line, e.key[0], "'new_measure' declared twice");
        d.new_measure = numbers(e);
      } else if (key == "check") {
        expect_single(e);
        need_variable(e.line, e.values[0]);
        d.checks.push_back(e.values[0].text);
      } else {
        error(e.line, e.key[0], "unknown key '" + key + "' in [shift]");
      }
    }
    if (d.underlying.empty()) error(s.line, s.column, "[shift] needs 'underlying = ...'");
    if (d.new_outcomes.empty()) error(s.line, s.column, "[shift] needs 'new = ...'");
    if (d.new_measure && d.new_measure->size() != d.new_outcomes.size()) {
      error(s.line, s.column, "'new_measure' needs one weight per new outcome");
    }
    if (d.new_measure) {
      for (double w : *d.new_measure) {
        if (!(w > 0.0)) error(s.line, s.column, "'new_measure' weights must be positive");
      }
    }
    std::vector<std::optional<std::pair<std::size_t, std::size_t>>> map(d.underlying.size());
    for (const Entry* m : maps) {
      const Entry& e = *m;
      auto it = v_index.find(e.key[0].text);
      if (it == v_index.end()) error(e.line, e.key[0], "unknown underlying outcome '" + e.key[0].text + "'");
      if (map[it->second]) error(e.line, e.key[0], "'" + e.key[0].text + "' mapped twice");
      if (e.values.size() != 2) error(e.line, e.op.column + 1, "expected 'v : original new'");
      const std::size_t x = outcome(e, e.values[0]);
      auto w = w_index.find(e.values[1].text);
      if (w == w_index.end()) error(e.line, e.values[1], "unknown new outcome '" + e.values[1].text + "'");
      map[it->second] = std::make_pair(x, w->second);
    }
    for (std::size_t v = 0; v < map.size(); ++v) {
      if (!map[v]) error(s.line, s.column, "underlying outcome '" + d.underlying[v] + "' is not mapped");
      d.to_original.push_back(map[v]->first);
      d.to_new.push_back(map[v]->second);
    }
    file_.shift = std::move(d);
  }

  void parse_query(const Section& s) {
    QueryDef q;
    if (s.argument) q.name = s.argument->text;
    bool have_family = false;
    for (const auto& e : s.entries) {
      expect_key(e, "[query]");
      if (e.op.text != "=") error(e.line, e.op, "query entries use '='");
      const std::string& key = e.key[0].text;
      if (key == "y" || key == "z" || key == "coarsening" || key == "candidate") {
        expect_single(e);
        need_variable(e.line, e.values[0]);
        const std::string& name = e.values[0].text;
        if (key == "candidate") {
          q.candidates.push_back(name);
          continue;
        }
        std::string& slot = key == "y" ? q.y : key == "coarsening" ? q.coarsening : q.z.emplace();
        if (key != "z" && !slot.empty()) error(e.line, e.key[0], "'" + key + "' given twice");
        slot = name;
      } else if (key == "family") {
        expect_single(e);
        if (have_family) error(e.line, e.key[0], "'family' given twice");
        have_family = true;
        const std::string& f = e.values[0].text;
        if (f == "singleton") q.family = FamilyKind::Singleton;
        else if (f == "uniform") q.family = FamilyKind::Uniform;
        else if (f == "all") q.family = FamilyKind::All;
        else if (f == "compatible") q.family = FamilyKind::Compatible;
        else error(e.line, e.values[0], "family must be singleton, uniform, all or compatible");
      } else if (key == "reference") {
        if (q.reference) error(e.line, e.key[0], "'reference' given twice");
        q.reference = numbers(e);
        for (std::size_t i = 0; i < q.reference->size(); ++i) {
          if (!((*q.reference)[i] > 0.0)) error(e.line, e.values[i], "reference weights must be positive");
        }
      } else {
        error(e.line, e.key[0], "unknown key '" + key + "' in [query]");
      }
    }
    if (q.y.empty()) error(s.line, s.column, "[query] needs 'y = VARIABLE'");
    if (q.family == FamilyKind::Compatible) {
      if (q.coarsening.empty()) error(s.line, s.column, "family 'compatible' needs 'coarsening = VARIABLE'");
      const auto& phi = *find_variable(q.coarsening);
      const auto range = RandomVariable(make_numbered_space(file_.outcomes.size()), phi.dim, phi.table).range();
      if (q.reference && q.reference->size() != range.size()) {
        error(s.line, s.column, "'reference' needs one weight per value of '" + q.coarsening + "' (" +
                                    std::to_string(range.size()) + ")");
      }
    } else if (!q.coarsening.empty() || q.reference) {
      error(s.line, s.column, "'coarsening' and 'reference' apply only to family 'compatible'");
    }
    file_.queries.push_back(std::move(q));
  }

  void parse_kelly(const Section& s) {
    if (s.argument) error(s.line, *s.argument, "[kelly] takes no name");
    KellyDef k;
    bool have_true = false;
    const std::size_t n = file_.outcomes.size();
    std::set<std::string> seen;
    for (const auto& e : s.entries) {
      if (e.op.text != "=") error(e.line, e.op, "kelly entries use '='");
      const std::string& key = e.key[0].text;
      if (key == "strategy") {
        if (e.key.size() != 2) error(e.line, e.key[0], "expected 'strategy NAME = weights' or 'strategy NAME = maxent'");
        StrategyDef st;
        st.name = e.key[1].text;
        if (std::any_of(k.strategies.begin(), k.strategies.end(), [&](const StrategyDef& o) { return o.name == st.name; })) {
          error(e.line, e.key[1], "strategy '" + st.name + "' defined twice");
        }
        if (e.values.size() == 1 && e.values[0].text == "maxent") {
          k.strategies.push_back(std::move(st));
          continue;
        }
        st.weights = numbers(e);
        if (st.weights->size() != n) error(e.line, e.values.front(), "expected " + std::to_string(n) + " weights");
        k.strategies.push_back(std::move(st));
        continue;
      }
      expect_key(e, "[kelly]");
      if (!seen.insert(key).second) error(e.line, e.key[0], "'" + key + "' given twice");
      if (key == "true") {
        k.true_dist = numbers(e);
        if (k.true_dist.size() != n) error(e.line, e.values.front(), "expected " + std::to_string(n) + " probabilities");
        have_true = true;
      } else if (key == "rounds" || key == "trials" || key == "seed") {
        expect_single(e);
        const std::size_t v = count(e, e.values[0]);
        if (key == "rounds") k.rounds = v;
        else if (key == "trials") k.trials = v;
        else k.seed = v;
      } else if (key == "capital") {
        expect_single(e);
        k.capital = number(e, e.values[0]);
      } else {
        error(e.line, e.key[0], "unknown key '" + key + "' in [kelly]");
      }
    }
    if (!have_true) error(s.line, s.column, "[kelly] needs 'true = probabilities'");
    if (k.strategies.empty()) error(s.line, s.column, "[kelly] needs at least one strategy");
    if (k.rounds == 0 || k.trials == 0) error(s.line, s.column, "rounds and trials must be at least 1");
    file_.kelly = std::move(k);
  }

  std::string source_;
  std::vector<Section> sections_;
  std::map<std::string, std::size_t> label_index_;
  ProblemFile file_;
};

std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (double d : v) out += (out.empty() ? "" : " ") + num(d);
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : " ") + s;
  return out;
}

void write_rows(std::ostringstream& out, const std::vector<RowDef>& rows) {
  for (const auto& r : rows) {
    out << r.variable;
    if (r.component) out << '[' << *r.component << ']';
    out << (r.relation == Relation::AtLeast ? " >= " : " = ") << join(r.target) << '\n';
  }
}

const char* family_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::Singleton: return "singleton";
    case FamilyKind::Uniform: return "uniform";
    case FamilyKind::All: return "all";
    case FamilyKind::Compatible: return "compatible";
  }
  return "singleton";
}

}  // namespace

ProblemFile parse_problem(std::string_view text, const std::string& source) {
  return Parser(text, source).run();
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str(), path);
}

std::string serialize(const ProblemFile& f) {
  std::ostringstream out;
  out << "[space]\noutcomes = " << join(f.outcomes) << '\n';
  if (f.measure) out << "\n[measure]\nweights = " << join(*f.measure) << '\n';
  for (const auto& v : f.variables) {
    out << "\n[variable " << v.name << "]\n";
    if (v.dim == 1) {
      out << "values = " << join(v.table) << '\n';
    } else {
      out << "dim = " << v.dim << '\n';
      for (std::size_t x = 0; x < f.outcomes.size(); ++x) {
        std::vector<double> row(v.table.begin() + static_cast<std::ptrdiff_t>(x * v.dim),
                                v.table.begin() + static_cast<std::ptrdiff_t>((x + 1) * v.dim));
        out << f.outcomes[x] << " : " << join(row) << '\n';
      }
    }
  }
  if (!f.constraints.empty()) {
    out << "\n[constraints]\n";
    write_rows(out, f.constraints);
  }
  for (const auto& b : f.branches) {
    out << "\n[branch]\n";
    write_rows(out, b);
  }
  if (f.shift) {
    const auto& s = *f.shift;
    out << "\n[shift]\nunderlying = " << join(s.underlying) << "\nnew = " << join(s.new_outcomes) << '\n';
    if (s.new_measure) out << "new_measure = " << join(*s.new_measure) << '\n';
    for (std::size_t v = 0; v < s.underlying.size(); ++v) {
      out << s.underlying[v] << " : " << f.outcomes[s.to_original[v]] << ' ' << s.new_outcomes[s.to_new[v]] << '\n';
    }
    for (const auto& c : s.checks) out << "check = " << c << '\n';
  }
  for (const auto& q : f.queries) {
    out << "\n[query" << (q.name.empty() ? "" : " " + q.name) << "]\ny = " << q.y << '\n';
    if (q.z) out << "z = " << *q.z << '\n';
    out << "family = " << family_name(q.family) << '\n';
    if (!q.coarsening.empty()) out << "coarsening = " << q.coarsening << '\n';
    if (q.reference) out << "reference = " << join(*q.reference) << '\n';
    for (const auto& c : q.candidates) out << "candidate = " << c << '\n';
  }
  if (f.kelly) {
    const auto& k = *f.kelly;
    out << "\n[kelly]\ntrue = " << join(k.true_dist) << '\n';
    for (const auto& s : k.strategies) {
      out << "strategy " << s.name << " = " << (s.weights ? join(*s.weights) : std::string("maxent")) << '\n';
    }
    out << "rounds = " << k.rounds << "\ntrials = " << k.trials << "\nseed = " << k.seed
        << "\ncapital = " << num(k.capital) << '\n';
  }
  return out.str();
}

ProblemModel::ProblemModel(ProblemFile file, SolverConfig config)
    : file_(std::move(file)),
      config_(config),
      space_(make_space(file_.outcomes)),
      measure_(file_.measure ? Measure(space_, *file_.measure) : Measure::uniform(space_)) {
  for (const auto& v : file_.variables) variables_.emplace(v.name, RandomVariable(space_, v.dim, v.table));
}

const RandomVariable& ProblemModel::variable(const std::string& name) const {
  auto it = variables_.find(name);
  require(it != variables_.end(), ErrorCode::InvalidArgument, "unknown variable '" + name + "'");
  return it->second;
}

ConstraintSpec ProblemModel::spec(const std::vector<RowDef>& rows) const {
  if (rows.empty()) return ConstraintSpec::none(space_);
  std::vector<RandomVariable> parts;
  std::vector<double> target;
  std::vector<Relation> relations;
  for (const auto& r : rows) {
    const auto& v = variable(r.variable);
    parts.push_back(r.component ? v.component(*r.component) : v);
    target.insert(target.end(), r.target.begin(), r.target.end());
    relations.insert(relations.end(), r.target.size(), r.relation);
  }
  return ConstraintSpec(RandomVariable::stack(parts), std::move(target), std::move(relations));
}

ConstraintSet ProblemModel::constraints() const {
  require(!has_branches(), ErrorCode::InvalidArgument,
          "this command needs a convex constraint set; the file declares [branch] sections");
  return ConstraintSet::create(spec(file_.constraints), config_);
}

DisjunctiveConstraint ProblemModel::disjunction() const {
  std::vector<ConstraintSpec> specs;
  for (const auto& b : file_.branches) {
    std::vector<RowDef> rows = file_.constraints;
    rows.insert(rows.end(), b.begin(), b.end());
    specs.push_back(spec(rows));
  }
  if (specs.empty()) specs.push_back(spec(file_.constraints));
  return DisjunctiveConstraint::from_specs(specs, config_);
}

MaxEntProblem ProblemModel::problem() const { return MaxEntProblem(measure_, constraints()); }

RepresentationShift ProblemModel::shift() const {
  require(file_.shift.has_value(), ErrorCode::InvalidArgument, "the file has no [shift] section");
  const auto& s = *file_.shift;
  auto v = make_space(s.underlying);
  auto w = make_space(s.new_outcomes);
  std::optional<Measure> mw;
  if (s.new_measure) mw = Measure(w, *s.new_measure);
  return RepresentationShift(v, space_, w, s.to_original, s.to_new, std::move(mw));
}

ApplicationQuery ProblemModel::query(std::size_t i) const {
  const auto& q = file_.queries.at(i);
  auto family = [&]() {
    switch (q.family) {
      case FamilyKind::Singleton: return MeasureFamily::singleton(measure_);
      case FamilyKind::Uniform: return MeasureFamily::uniform_on_base(space_);
      case FamilyKind::All: return MeasureFamily::all_measures(space_);
      case FamilyKind::Compatible: break;
    }
    const auto& phi = variable(q.coarsening);
    return q.reference ? MeasureFamily::compatible_with(phi, *q.reference) : uniform_measure_on_range(phi);
  }();
  std::vector<RandomVariable> candidates;
  for (const auto& c : q.candidates) candidates.push_back(variable(c));
  return ApplicationQuery{constraints(), std::move(family), variable(q.y),
                          q.z ? variable(*q.z) : RandomVariable::constant(space_, 0.0),
                          std::move(candidates)};
}

KellyConfig ProblemModel::kelly() const {
  require(file_.kelly.has_value(), ErrorCode::InvalidArgument, "the file has no [kelly] section");
  const auto& k = *file_.kelly;
  KellyConfig c{measure_, Distribution::normalized(space_, k.true_dist), {}, k.rounds, k.trials, k.seed, k.capital};
  std::optional<Distribution> maxent;
  for (const auto& s : k.strategies) {
    if (s.weights) {
      c.strategies.push_back({s.name, Distribution::normalized(space_, *s.weights)});
      continue;
    }
    if (!maxent) {
      maxent = has_branches() ? solve_minimax_union(disjunction(), measure_).distribution
                              : worst_case_growth_strategy(constraints(), measure_);
    }
    c.strategies.push_back({s.name, *maxent});
  }
  return c;
}

}  // namespace maxent::cli
