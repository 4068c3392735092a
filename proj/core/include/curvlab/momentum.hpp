#pragma once

#include <cstddef>
#include <optional>

#include "curvlab/curvature_field.hpp"
#include "curvlab/grid.hpp"

namespace curvlab {

/// First point where |p| reaches 1 - p_tol.
struct MomentumEvent {
  double x = 0.0;
  int sign = 0;
  double u = 0.0;
  /// The step size collapsed before the crossing could be bracketed.
  bool reduced_confidence = false;
};

struct MomentumResult {
  /// Nodal values; nodes beyond the event repeat u(x*).
  GridFunction u;
  /// p at cell midpoints; cells beyond the event repeat the event sign.
  MomentumField p;
  /// Nodes 0..last_node were reached before any event.
  std::size_t last_node = 0;
  std::optional<MomentumEvent> event;
};

/// Integrates u' = p / sqrt(1 - p^2), p' = -f(x, u) from (a, u0, p0) with adaptive
/// Dormand-Prince steps and stops at the first x* with |p(x*)| >= 1 - p_tol.
/// Throws Error(InvalidArgument) unless |p0| < 1.
[[nodiscard]] MomentumResult momentum_integrate(const CurvatureField& f, double u0, double p0, const Grid& grid,
                                                double p_tol = 1e-4);

}  // namespace curvlab
