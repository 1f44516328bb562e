#include "maxent/sampling.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace maxent {

std::vector<Distribution> hit_and_run(const ConstraintSet& c, std::size_t count, Rng& rng,
                                      const HitAndRunOptions& options) {
  const auto& geom = c.geometry();
  const StandardForm& form = c.standard_form();
  const double tol = c.config().support_tolerance;

  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < form.cols; ++j) {
    if (geom.var_max[j] > tol) free.push_back(j);
  }
  const auto k = static_cast<Eigen::Index>(free.size());

  Eigen::MatrixXd a(static_cast<Eigen::Index>(form.rows), k);
  for (std::size_t r = 0; r < form.rows; ++r) {
    for (Eigen::Index j = 0; j < k; ++j) a(static_cast<Eigen::Index>(r), j) = form(r, free[j]);
  }
  // Orthonormal basis of null(A) restricted to the free variables.
  Eigen::MatrixXd basis;
  if (k > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    svd.setThreshold(1e-10);
    const Eigen::Index rank = svd.rank();
    basis = svd.matrixV().rightCols(k - rank);
  }

  Eigen::VectorXd y(k);
  for (Eigen::Index j = 0; j < k; ++j) y(j) = geom.interior[free[j]];

  auto emit = [&] {
    std::vector<double> p(c.size(), 0.0);
    for (Eigen::Index j = 0; j < k; ++j) {
      if (free[j] < c.size()) p[free[j]] = std::max(0.0, y(j));
    }
    return Distribution::normalized(c.space(), std::move(p));
  };

  auto step = [&] {
    if (basis.cols() == 0) return;
    Eigen::VectorXd g(basis.cols());
    for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = rng.normal();
    const Eigen::VectorXd d = basis * g;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < k; ++j) {
      if (std::fabs(d(j)) < 1e-14) continue;
      const double bound = -y(j) / d(j);
      if (d(j) > 0.0) lo = std::max(lo, bound);
      else hi = std::min(hi, bound);
    }
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) return;
    y += rng.uniform(lo, hi) * d;
    for (Eigen::Index j = 0; j < k; ++j) y(j) = std::max(y(j), 0.0);
  };

  for (std::size_t i = 0; i < options.burn_in; ++i) step();
  std::vector<Distribution> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    for (std::size_t i = 0; i < std::max<std::size_t>(options.thin, 1); ++i) step();
    out.push_back(emit());
  }
  return out;
}

}  // namespace maxent
