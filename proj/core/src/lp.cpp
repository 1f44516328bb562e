#include "maxent/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxent/errors.hpp"

namespace maxent {

namespace {

constexpr std::size_t kMaxPivots = 200000;

using Row = std::vector<double>;

void pivot(std::vector<Row>& t, Row& objective, std::vector<std::size_t>& basis,
           std::size_t r, std::size_t c) {
  Row& pr = t[r];
  const double inv = 1.0 / pr[c];
  for (double& v : pr) v *= inv;
  pr[c] = 1.0;
  auto eliminate = [&](Row& row) {
    const double f = row[c];
    if (f == 0.0) return;
    for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * pr[j];
    row[c] = 0.0;
  };
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i != r) eliminate(t[i]);
  }
  eliminate(objective);
  basis[r] = c;
}

// Bland's rule: lowest-index improving column, ratio ties to lowest basic index.
// `objective` holds reduced costs of a minimization; its last entry is -z.
// Returns false if unbounded.
bool run_bland(std::vector<Row>& t, Row& objective, std::vector<std::size_t>& basis,
               std::size_t ncols, double pivot_tol, std::size_t& pivots) {
  const std::size_t rhs = ncols;
  while (true) {
    std::size_t enter = ncols;
    for (std::size_t j = 0; j < ncols; ++j) {
      if (objective[j] < -pivot_tol) {
        enter = j;
        break;
      }
    }
    if (enter == ncols) return true;

    std::size_t leave = t.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double a = t[i][enter];
      if (a <= pivot_tol) continue;
      const double ratio = std::max(0.0, t[i][rhs]) / a;
      if (ratio < best - 1e-12 ||
          (ratio <= best + 1e-12 && leave < t.size() && basis[i] < basis[leave])) {
        if (ratio < best) best = ratio;
        leave = i;
      }
    }
    if (leave == t.size()) return false;
    pivot(t, objective, basis, leave, enter);
    if (++pivots > kMaxPivots) {
      fail(ErrorCode::NonConvergence, "simplex exceeded the pivot limit");
    }
  }
}

}  // namespace

std::size_t StandardForm::add_row(double rhs) {
  a.resize(a.size() + cols, 0.0);
  b.push_back(rhs);
  return rows++;
}

std::size_t StandardForm::add_col() {
  std::vector<double> grown(rows * (cols + 1), 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    std::copy_n(a.begin() + static_cast<std::ptrdiff_t>(r * cols), cols,
                grown.begin() + static_cast<std::ptrdiff_t>(r * (cols + 1)));
  }
  a = std::move(grown);
  return cols++;
}

double StandardForm::max_violation(std::span<const double> y) const {
  double worst = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < cols; ++c) s += (*this)(r, c) * y[c];
    worst = std::max(worst, std::fabs(s - b[r]));
  }
  for (double v : y) worst = std::max(worst, -v);
  return worst;
}

Simplex::Simplex(const StandardForm& form, double pivot_tolerance, double feasibility_tolerance)
    : cols_(form.cols), pivot_tol_(pivot_tolerance), feas_tol_(feasibility_tolerance) {
  const std::size_t m = form.rows;
  const std::size_t n = form.cols;
  const std::size_t width = n + m;  // originals then artificials

  std::vector<Row> t(m, Row(width + 1, 0.0));
  std::vector<std::size_t> basis(m);
  double scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = form.b[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * form(i, j);
    t[i][n + i] = 1.0;
    t[i][width] = sign * form.b[i];
    basis[i] = n + i;
    scale = std::max(scale, std::fabs(form.b[i]));
  }

  // Phase 1: minimize the sum of artificials.
  Row objective(width + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) objective[j] -= t[i][j];
    objective[width] -= t[i][width];
  }
  std::size_t pivots = 0;
  run_bland(t, objective, basis, width, pivot_tol_, pivots);
  infeasibility_ = std::max(0.0, -objective[width]);
  feasible_ = infeasibility_ <= feas_tol_ * scale;
  if (!feasible_) return;

  // Drive remaining (zero-level) artificials out, or drop their rows.
  std::vector<bool> keep(m, true);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    std::size_t best = n;
    double best_abs = pivot_tol_ * 1e3;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::fabs(t[i][j]) > best_abs) {
        best_abs = std::fabs(t[i][j]);
        best = j;
      }
    }
    if (best == n) {
      keep[i] = false;
    } else {
      pivot(t, objective, basis, i, best);
    }
  }

  for (std::size_t i = 0; i < m; ++i) {
    if (!keep[i]) continue;
    Row row(t[i].begin(), t[i].begin() + static_cast<std::ptrdiff_t>(n));
    row.push_back(std::max(0.0, t[i][width]));
    tableau_.push_back(std::move(row));
    basis_.push_back(basis[i]);
  }
}

std::vector<double> Simplex::initial_vertex() const {
  require(feasible_, ErrorCode::Infeasible, "polytope is empty");
  std::vector<double> x(cols_, 0.0);
  for (std::size_t i = 0; i < basis_.size(); ++i) x[basis_[i]] = tableau_[i][cols_];
  return x;
}

LpSolution Simplex::optimize(std::span<const double> c, Sense sense) const {
  require(feasible_, ErrorCode::Infeasible, "polytope is empty");
  require(c.size() == cols_, ErrorCode::InvalidArgument, "objective has the wrong length");
  std::vector<Row> t = tableau_;
  std::vector<std::size_t> basis = basis_;
  const double sign = sense == Sense::Maximize ? -1.0 : 1.0;

  Row objective(cols_ + 1, 0.0);
  for (std::size_t j = 0; j < cols_; ++j) objective[j] = sign * c[j];
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double cb = sign * c[basis[i]];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= cols_; ++j) objective[j] -= cb * t[i][j];
  }

  LpSolution sol;
  if (!run_bland(t, objective, basis, cols_, pivot_tol_, sol.pivots)) {
    fail(ErrorCode::InvalidArgument, "linear program is unbounded");
  }
  sol.x.assign(cols_, 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) sol.x[basis[i]] = std::max(0.0, t[i][cols_]);
  for (std::size_t j = 0; j < cols_; ++j) sol.value += c[j] * sol.x[j];
  return sol;
}

}  // namespace maxent
