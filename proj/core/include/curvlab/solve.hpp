#pragma once

#include <optional>
#include <vector>

#include "curvlab/boundary.hpp"
#include "curvlab/curvature_field.hpp"
#include "curvlab/energy.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/grid.hpp"

namespace curvlab {

struct MinimizeReport {
  int iterations = 0;
  double initial_energy = 0.0;
  double final_energy = 0.0;
  double stationarity = 0.0;
  /// Converged on the relaxed 1e-9 defect after rounding stopped further progress.
  bool rounding_limited = false;
  /// Energy after every accepted step (starting with the initial energy).
  std::vector<double> energies;
};

struct MinimizeResult {
  GridFunction v;
  MinimizeReport report;
};

/// Damped Newton descent with Armijo backtracking on the smooth part of E; Dirichlet
/// absolute values are handled by an active set that pins v at the boundary datum
/// while the boundary subgradient stays in [-1, 1].
/// Throws Error(MaxIterations) when the defect stalls above tolerance and
/// Error(UnboundedBelow) when an iterate leaves the box |v| <= 1e6.
[[nodiscard]] MinimizeResult minimize_energy(const DiscreteEnergy& e, const GridFunction& v0, const SolveParams& params);

struct TraceRow {
  int iteration = 0;
  double energy = 0.0;
  double sup_change = 0.0;
  int inner_iterations = 0;
};

struct SolveResult {
  GridFunction u;
  bool converged = false;
  int outer_iterations = 0;
  double last_change = 0.0;
  double stationarity = 0.0;
  std::vector<TraceRow> trace;
};

/// Thrown after outer_max fixed-point sweeps; carries the last two iterates.
class OuterNoConvergence : public Error {
 public:
  OuterNoConvergence(const std::string& message, std::vector<double> last, std::vector<double> previous,
                     std::vector<TraceRow> trace);
  [[nodiscard]] const std::vector<double>& last() const noexcept { return last_; }
  [[nodiscard]] const std::vector<double>& previous() const noexcept { return previous_; }
  [[nodiscard]] const std::vector<TraceRow>& trace() const noexcept { return trace_; }

 private:
  std::vector<double> last_;
  std::vector<double> previous_;
  std::vector<TraceRow> trace_;
};

/// Local Lipschitz estimates |df/ds| at (x_i, u_i) by central differences.
[[nodiscard]] std::vector<double> state_lipschitz(const CurvatureField& f, const Grid& grid, std::span<const double> u);

/// Outer fixed point: freeze load_i = f(x_i, u_i), minimize with the proximal
/// weight rho_i = |df/ds| around u, then relax u <- u + damping (v - u).
/// State-independent loads take exactly one sweep with no proximal term.
/// Throws OuterNoConvergence, Error(RangeExceeded) when an iterate leaves
/// [s_min, s_max], and whatever minimize_energy throws.
[[nodiscard]] SolveResult solve(const CurvatureField& f, const BoundaryCondition& bc, const Grid& grid,
                                const SolveParams& params, const std::optional<GridFunction>& initial = std::nullopt);

}  // namespace curvlab
