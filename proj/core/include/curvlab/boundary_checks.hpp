#pragma once

#include <string>

#include "curvlab/boundary.hpp"
#include "curvlab/curvature_field.hpp"
#include "curvlab/grid.hpp"

namespace curvlab {

struct EndReport {
  /// Dirichlet: whether |u - k| <= tol.
  bool attained = false;
  double trace = 0.0;
  double gap = 0.0;
  /// Boundary flux p(a+) or p(b-).
  double flux = 0.0;
  /// |flux| >= 1 - p_tol.
  bool saturated = false;
  /// Neumann/Robin: residual of the flux relation.
  double residual = 0.0;
};

struct BoundaryReport {
  std::string condition;
  EndReport left;
  EndReport right;
  /// Periodic only.
  double value_gap = 0.0;
  double flux_gap = 0.0;
};

/// Per-end trace and flux report. Dirichlet ends are attained or detached with a
/// saturated flux; Neumann and Robin report the flux relation residual; Periodic
/// reports |u(a) - u(b)| and the flux mismatch.
[[nodiscard]] BoundaryReport boundary_attainment(const GridFunction& u, const CurvatureField& f,
                                                 const BoundaryCondition& bc, double p_tol = 1e-4,
                                                 double tol = 1e-9);

struct U2Report {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double z = 0.0;
};

/// Both sides of int |u''| = |u'(a) - 2 u'(z) + u'(b)| for a jump-free solution whose
/// second differences change sign at most once (z at the end matching the sign when
/// they never do). Throws Error(NotApplicable) otherwise.
[[nodiscard]] U2Report u2_integrability(const GridFunction& u, double p_tol = 1e-4);

/// Circular arc of radius 1/lambda through (0, 0) and (1, 0) solving -(psi(u'))' = lambda,
/// defined for 0 < lambda <= 2.
[[nodiscard]] double circle_arc(double lambda, double x);
[[nodiscard]] double circle_arc_slope(double lambda, double x);

}  // namespace curvlab
