#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace maxent {

/// Equality-form polytope {y >= 0 : A y = b}, A dense and row-major.
struct StandardForm {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;
  std::vector<double> b;

  StandardForm() = default;
  StandardForm(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0), b(r, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  /// Appends a row and returns its index.
  std::size_t add_row(double rhs);
  /// Appends a zero column and returns its index.
  std::size_t add_col();
  double max_violation(std::span<const double> y) const;
};

enum class Sense { Minimize, Maximize };

struct LpSolution {
  double value = 0.0;
  std::vector<double> x;
  std::size_t pivots = 0;
};

/// Dense tableau simplex with Bland's rule, sized for desk-scale problems.
///
/// Phase 1 runs once at construction; each optimize() call restarts phase 2
/// from the same feasible basis, so repeated objectives over one polytope
/// (support scans, vertex enumeration) share the phase-1 work and do not
/// depend on call order.
class Simplex {
 public:
  explicit Simplex(const StandardForm& form, double pivot_tolerance = 1e-11,
                   double feasibility_tolerance = 1e-9);

  bool feasible() const noexcept { return feasible_; }
  /// Optimal phase-1 objective (sum of artificials); 0 for feasible forms.
  double infeasibility() const noexcept { return infeasibility_; }
  /// Rows kept after dropping redundant equalities.
  std::size_t rank() const noexcept { return basis_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  /// Optimizes c.y over the polytope. Requires feasible().
  LpSolution optimize(std::span<const double> c, Sense sense) const;
  /// The phase-1 basic feasible solution.
  std::vector<double> initial_vertex() const;

 private:
  // Tableau rows are [B^-1 A | B^-1 b], one per kept constraint.
  std::size_t cols_ = 0;
  std::vector<std::vector<double>> tableau_;
  std::vector<std::size_t> basis_;
  bool feasible_ = false;
  double infeasibility_ = 0.0;
  double pivot_tol_;
  double feas_tol_;
};

}  // namespace maxent
