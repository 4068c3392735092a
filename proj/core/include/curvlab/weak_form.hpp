#pragma once

#include <vector>

#include "curvlab/boundary.hpp"
#include "curvlab/curvature_field.hpp"
#include "curvlab/grid.hpp"

namespace curvlab {

struct AtomCheck {
  std::size_t node = 0;
  double height = 0.0;
  /// Residual of the singular test whose derivative carries -delta at the atom:
  /// flux on the first atom cell minus sgn(height).
  double singular_residual = 0.0;
  /// max |p - sgn(height)| over the atom cells.
  double flux_defect = 0.0;
  bool admissible = false;
};

struct WeakFormReport {
  /// r_i = p_{i-1} - p_i - h f(x_i, u_i) for the hat function at node i, plus the
  /// boundary rows of the condition in force.
  std::vector<double> hat_residuals;
  double max_hat_residual = 0.0;
  std::vector<AtomCheck> atoms;
  bool hat_pass = false;
  bool atoms_pass = false;
  bool pass = false;
};

/// Evaluates the discrete weak form against the nodal hat basis and one singular
/// test per atom. Hat rows PASS when max |r_i| <= tol; atoms PASS when their flux is
/// saturated within p_tol. A Dirichlet end contributes a row only when its trace is
/// detached (|u - k| > tol), using the sgn(u - k) boundary term.
[[nodiscard]] WeakFormReport verify_weak_form(const GridFunction& u, const CurvatureField& f,
                                              const BoundaryCondition& bc, double tol, double p_tol = 1e-4);

}  // namespace curvlab
