#pragma once

#include <optional>
#include <span>
#include <vector>

#include "curvlab/curvature_field.hpp"
#include "curvlab/grid.hpp"

namespace curvlab {

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

[[nodiscard]] const char* to_string(Sign s);

struct SignInterval {
  double lo = 0.0;
  double hi = 0.0;
  Sign sign = Sign::Zero;
};

/// Partition of [a, b] by the sign of g(x) = f(x, u(x)).
struct SignProfile {
  std::vector<SignInterval> intervals;
  std::vector<double> change_points;
};

/// Sign profile of sampled values g_i at the grid nodes. |g_i| <= tol counts as zero.
/// Zero runs are absorbed by their signed neighbours: by the common sign when both
/// neighbours agree, by the single neighbour at either end of the domain, and split
/// at their midpoint (which becomes the change point) between opposite signs.
/// A direct sign flip between two nodes is located by linear interpolation.
[[nodiscard]] SignProfile sign_profile_of_samples(const Grid& grid, std::span<const double> g, double tol);

/// Samples f(x_i, u(x_i)) and calls sign_profile_of_samples. A negative tol
/// selects the default band 1e-12 * max|f(x_i, u_i)|.
[[nodiscard]] SignProfile sign_profile(const CurvatureField& f, const GridFunction& u, double tol = -1.0);

/// f(x_i, u_i) at every node of u (full nodal values).
[[nodiscard]] std::vector<double> sample_load(const CurvatureField& f, const GridFunction& u);

}  // namespace curvlab
