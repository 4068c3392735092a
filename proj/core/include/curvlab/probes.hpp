#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvlab/criteria.hpp"
#include "curvlab/expr.hpp"

namespace curvlab {

/// Right-hand side g(t, s, xi) of v'' = g.
struct OdeRhs {
  enum class Kind {
    Power,             // c |s|^q
    Linear,            // c s
    CurvatureInverse,  // c |s|^q (1 + xi^2)^{3/2}
    Expression,        // expr(t, s) with t written as x
  };
  Kind kind = Kind::Power;
  double c = 1.0;
  double q = 1.0;
  std::optional<Expr> expr;

  [[nodiscard]] double operator()(double t, double s, double xi) const;
  [[nodiscard]] std::string describe() const;
};

struct OdeInstance {
  double alpha = 0.0;
  double omega = 1.0;
  OdeRhs rhs;
  double v0 = 0.0;
  double dv0 = 1.0;
  criteria::ComparisonG comparison;
  /// Localization radius in both v and v'.
  double epsilon = 0.5;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<double> v;
  std::vector<double> dv;
};

/// Uniform samples of v'' = g from (alpha, v0, dv0) on resolution cells.
[[nodiscard]] Trajectory integrate_instance(const OdeInstance& inst, std::size_t resolution);

enum class PositivityOutcome { StronglyPositive, DeadCoreFound, BoundaryTangency };
enum class Localization { Holds, Fails, NotEntered };

[[nodiscard]] const char* to_string(PositivityOutcome o);
[[nodiscard]] const char* to_string(Localization l);

struct PositivityResult {
  PositivityOutcome outcome = PositivityOutcome::StronglyPositive;
  /// Dead-core edge or tangent end; unused when strongly positive.
  double location = 0.0;
  criteria::CriterionVerdict verdict;
  Localization localization = Localization::NotEntered;
  /// Band samples with 0 < v <= eps and |v'| <= eps.
  std::size_t band_samples = 0;
  bool contradiction = false;
  std::string detail;
};

/// Scans a nonnegative nontrivial trajectory for dead cores and tangential zeros at
/// the ends. A non-positive outcome is a CONTRADICTION when the comparison verdict is
/// guaranteed and 0 <= g <= G'(v) holds at every sample of the eps band.
/// Throws Error(InvalidArgument) for a trivial or sign-changing trajectory and
/// Error(LocalizationUnverifiable) when a non-positive outcome occurs but the band is
/// never entered.
[[nodiscard]] PositivityResult positivity_probe(const OdeInstance& inst, const Trajectory& traj);
[[nodiscard]] PositivityResult positivity_probe(const OdeInstance& inst, std::size_t resolution);

struct OsgoodResult {
  bool sign_change_found = false;
  double location = 0.0;
  criteria::CriterionVerdict verdict;
  bool contradiction = false;
};

/// Checks |v'| <= H(v) where |v| <= eps (Error(InequalityViolated) otherwise, with
/// relative slack tol) and looks for a zero of v. A zero is a CONTRADICTION when the
/// Osgood verdict is guaranteed.
[[nodiscard]] OsgoodResult osgood_probe(const criteria::StateEnvelope& left, const criteria::StateEnvelope& right,
                                        const Trajectory& traj, double tol = 1e-8);

/// G'(s) for the comparison family (0 in the zero case).
[[nodiscard]] double comparison_derivative(const criteria::ComparisonG& g, double s);

}  // namespace curvlab
