#pragma once

#include <string>
#include <vector>

#include "curvlab/criteria.hpp"
#include "curvlab/curvature_field.hpp"
#include "curvlab/grid.hpp"
#include "curvlab/sign_profile.hpp"

namespace curvlab {

enum class Shape { Concave, Convex, Affine };
enum class SlopeStatus { Finite, PlusInfinity, MinusInfinity };
enum class TaxonomyCase { I, II, III, IIII, Composite };

[[nodiscard]] const char* to_string(Shape s);
[[nodiscard]] const char* to_string(SlopeStatus s);
[[nodiscard]] const char* to_string(TaxonomyCase c);

struct IntervalShape {
  SignInterval interval;
  Shape shape = Shape::Affine;
  /// Largest second difference against the mandated sign (0 when none).
  double max_violation = 0.0;
};

struct EndpointStatus {
  SlopeStatus status = SlopeStatus::Finite;
  /// Boundary flux extrapolated from the end cell with half a cell of load.
  double flux = 0.0;
  /// psi_inv(flux) when finite.
  double slope = 0.0;
};

struct JumpRecord {
  double location = 0.0;
  std::size_t node = 0;
  double u_left = 0.0;
  double u_right = 0.0;
  double height = 0.0;
  /// -1 downward, +1 upward.
  int direction = 0;
  /// Saturated flux without a resolvable jump (|height| <= 10 h); not atomized.
  bool continuous_blowup = false;
};

struct AttachedCriterion {
  std::string label;
  double point = 0.0;
  criteria::CriterionVerdict verdict;
};

struct RegularityReport {
  SignProfile sign_intervals;
  std::vector<IntervalShape> shapes;
  EndpointStatus left;
  EndpointStatus right;
  std::vector<JumpRecord> jumps;
  TaxonomyCase taxonomy_case = TaxonomyCase::I;
  std::vector<AttachedCriterion> criteria_verdicts;
  /// Interior cells with |p| >= 1 - p_tol that are not carried by an atom.
  std::size_t saturated_cells = 0;
  double shape_tol = 0.0;
  bool w21_claim = false;
};

struct Classification {
  RegularityReport report;
  /// Input with the detected jumps atomized.
  GridFunction u;
};

/// Sorts a solution into the four-case taxonomy. Saturated cells next to a sign
/// change are atomized (at most the two steepest adjacent cells); second differences
/// of the absolutely continuous part must be <= shape_tol on positive intervals and
/// >= -shape_tol on negative ones, with shape_tol = 1e-8 max|u|.
/// Throws Error(ShapeViolation) when a mandate of the taxonomy fails.
[[nodiscard]] Classification classify_solution(const GridFunction& u, const CurvatureField& f, double p_tol = 1e-4);

/// Boundary fluxes p(a+) = p_0 + h f_0 / 2 and p(b-) = p_{n-1} - h f_n / 2.
[[nodiscard]] std::pair<double, double> boundary_fluxes(const GridFunction& u, const CurvatureField& f);

/// Criteria verdicts implied by the load's closed form at its change points and
/// endpoints; loads without one get heuristic verdicts from sampled values.
[[nodiscard]] std::vector<AttachedCriterion> attached_criteria(const CurvatureField& f, const GridFunction& u,
                                                               const SignProfile& profile);

}  // namespace curvlab
