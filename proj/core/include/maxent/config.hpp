#pragma once

#include <cstddef>

namespace maxent {

/// Every numerical threshold used across the library. The defaults are the
/// values the acceptance suite pins; `strict()` tightens the iterative ones.
struct SolverConfig {
  // Value-vector equality for ranges, fibers and determination.
  double value_tolerance = 1e-9;
  // LP pivoting and feasibility.
  double lp_pivot_tolerance = 1e-11;
  double lp_feasibility_tolerance = 1e-9;
  // x is in SUPP(C) iff max_{P in C} P(x) exceeds this.
  double support_tolerance = 1e-10;
  // Dual Newton ascent.
  double moment_tolerance = 1e-8;
  std::size_t max_newton_iterations = 500;
  // Primal barrier path (inequality rows, lifted sets, fallback).
  double duality_gap = 1e-12;
  std::size_t max_barrier_iterations = 2000;
  // Membership of probes in C.
  double membership_tolerance = 1e-8;
  // Affine certificate acceptance (one order looser than the LP).
  double affine_tolerance = 1e-7;
  // Saddle / equalizer acceptance.
  double saddle_tolerance = 1e-6;

  static SolverConfig defaults() { return {}; }

  static SolverConfig strict() {
    SolverConfig c;
    c.moment_tolerance = 1e-11;
    c.duality_gap = 1e-14;
    c.max_newton_iterations = 1000;
    c.max_barrier_iterations = 5000;
    return c;
  }
};

}  // namespace maxent
