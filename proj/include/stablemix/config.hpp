#pragma once

#include "stablemix/quadrature.hpp"

namespace stablemix {

/// Tolerances shared by the quadrature- and series-based evaluators.
///
/// abs_tol and rel_tol drive the adaptive quadrature.  An alternating series
/// is accepted only when both its first omitted term and its accumulated
/// rounding error (eps times the sum of absolute terms) stay below rel_tol
/// relative to its value; otherwise evaluators fall back to quadrature.
struct NumericConfig {
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  int max_subdivisions = 2000;
  int series_max_terms = 120;

  QuadOptions quad() const { return {abs_tol, rel_tol, max_subdivisions, true}; }

  void validate() const;
};

/// Settings for the Prabhakar function evaluator.
struct SeriesConfig {
  int max_terms = 400;
  double tail_tol = 1e-14;
  double asymptotic_crossover = 40.0;

  void validate() const;
};

}  // namespace stablemix
