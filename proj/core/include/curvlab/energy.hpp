#pragma once

#include <optional>
#include <span>
#include <vector>

#include "curvlab/boundary.hpp"
#include "curvlab/grid.hpp"

namespace curvlab {

struct SolveParams {
  int outer_max = 50;
  double outer_tol = 1e-9;
  /// Stationarity tolerance of the inner minimizer, relative to 1 + |load_i|.
  double inner_tol = 1e-12;
  int inner_max = 20000;
  double damping = 0.5;
  double p_tol = 1e-4;
  double s_min = -1e6;
  double s_max = 1e6;
};

/// Throws Error(InvalidArgument) on non-positive tolerances, damping outside (0, 1]
/// or an empty state range.
void validate(const SolveParams& params);

/// Diagonal proximal term 1/2 h sum w_i rho_i (v_i - center_i)^2.
struct Prox {
  std::vector<double> center;
  std::vector<double> rho;
};

/// Discretized area functional with frozen load:
///   E(v) = sum_i sqrt(h^2 + (v_{i+1} - v_i)^2) + B(v) - h sum_i w_i load_i v_i [+ prox]
/// with trapezoid weights w and boundary term B:
///   Dirichlet  |v_0 - k0| + |v_n - k1|
///   Neumann    k0 v_0 - k1 v_n
///   Robin      k0 v_0 - l0 v_0^2 / 2 + l1 v_n^2 / 2 - k1 v_n
///   Periodic   sqrt(h^2 + (v_0 - v_n)^2) - h
/// Stationarity of the Robin term gives psi(u'(a)) + l0 u(a) = k0 and
/// psi(u'(b)) + l1 u(b) = k1; it is convex for l0 < 0 < l1.
class DiscreteEnergy {
 public:
  DiscreteEnergy(Grid grid, std::vector<double> load, BoundaryCondition bc);

  [[nodiscard]] DiscreteEnergy with_prox(Prox prox) const;

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::span<const double> load() const noexcept { return load_; }
  [[nodiscard]] const BoundaryCondition& bc() const noexcept { return bc_; }
  [[nodiscard]] const std::optional<Prox>& prox() const noexcept { return prox_; }

  [[nodiscard]] double value(std::span<const double> v) const;
  /// value(v) - n h. Same minimizers, better conditioned differences.
  [[nodiscard]] double excess_value(std::span<const double> v) const;

  /// Gradient of every term except the Dirichlet absolute values.
  [[nodiscard]] std::vector<double> smooth_gradient(std::span<const double> v) const;

  /// Largest first-order stationarity defect. Interior nodes contribute
  /// |g_i| / (1 + |load_i|); a Dirichlet end contributes max(0, |g| - 1) when the
  /// trace is attained and |g + sgn(v - k)| when it is detached.
  [[nodiscard]] double stationarity(std::span<const double> v) const;

 private:
  Grid grid_;
  std::vector<double> load_;
  BoundaryCondition bc_;
  std::optional<Prox> prox_;
};

}  // namespace curvlab
