#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace curvlab {

/// Momentum map psi(s) = s / sqrt(1 + s^2). Strictly increasing, odd, |psi| < 1.
[[nodiscard]] double psi(double slope) noexcept;

/// Inverse momentum map p / sqrt(1 - p^2). Throws SlopeInfinite when |p| >= 1.
[[nodiscard]] double psi_inv(double p);

/// Uniform grid on [a, b] with n cells and nodes x_i = a + i h.
class Grid {
 public:
  Grid(double a, double b, std::size_t n);

  [[nodiscard]] double a() const noexcept { return a_; }
  [[nodiscard]] double b() const noexcept { return b_; }
  [[nodiscard]] std::size_t cells() const noexcept { return n_; }
  [[nodiscard]] std::size_t nodes() const noexcept { return n_ + 1; }
  [[nodiscard]] double h() const noexcept { return (b_ - a_) / static_cast<double>(n_); }
  [[nodiscard]] double x(std::size_t i) const noexcept;
  /// Trapezoid weight of node i (1/2 at the ends, 1 inside).
  [[nodiscard]] double weight(std::size_t i) const noexcept { return (i == 0 || i == n_) ? 0.5 : 1.0; }
  /// Index of the cell containing x, clamped to [0, n-1].
  [[nodiscard]] std::size_t cell_of(double x) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double a_;
  double b_;
  std::size_t n_;
};

/// A jump atom of D^s u. The increments of `cells` consecutive cells starting at
/// `first_cell` are carried by the atom instead of the absolutely continuous part.
/// The atom sits at grid node `node`; `node_offset` is the part of the height
/// already reached at the interior node of a two-cell atom.
struct Jump {
  std::size_t node = 0;
  double height = 0.0;
  std::size_t first_cell = 0;
  std::size_t cells = 1;
  double node_offset = 0.0;

  friend bool operator==(const Jump&, const Jump&) = default;
};

/// Discrete BV function: nodal values of the absolutely continuous part plus atoms.
class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<double> ac_values, std::vector<Jump> jumps = {});

  /// Wraps plain nodal values without atoms.
  static GridFunction from_nodal(Grid grid, std::vector<double> nodal);
  static GridFunction constant(Grid grid, double value);

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::span<const double> ac_values() const noexcept { return ac_; }
  [[nodiscard]] const std::vector<Jump>& jumps() const noexcept { return jumps_; }

  /// Full nodal values (absolutely continuous part plus the atoms' contributions).
  [[nodiscard]] std::vector<double> nodal() const;
  /// Cell momenta psi((u_{i+1} - u_i)/h) of the full nodal values.
  [[nodiscard]] std::vector<double> momentum() const;
  [[nodiscard]] double total_variation() const;

  /// Trace just left / right of an atom.
  [[nodiscard]] double left_trace(const Jump& j) const;
  [[nodiscard]] double right_trace(const Jump& j) const;

  /// Replaces the increments of the given cells by an atom (mass conserving).
  [[nodiscard]] GridFunction atomize(std::size_t first_cell, std::size_t cells, std::size_t node) const;

 private:
  [[nodiscard]] double atom_contribution(std::size_t i) const;

  Grid grid_;
  std::vector<double> ac_;
  std::vector<Jump> jumps_;
};

/// Cell momenta of a grid function, with |p_i| <= 1.
struct MomentumField {
  Grid grid;
  std::vector<double> p;
};

[[nodiscard]] MomentumField momentum_field(const GridFunction& u);

/// Piecewise-linear interpolation of the absolutely continuous part onto a finer grid
/// whose cell count is a multiple of the original one; atoms are carried over.
[[nodiscard]] GridFunction refine(const GridFunction& u, std::size_t factor);

}  // namespace curvlab
