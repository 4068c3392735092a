#include <gtest/gtest.h>

#include <cmath>

#include "curvlab/boundary_checks.hpp"
#include "curvlab/energy.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/solve.hpp"

using namespace curvlab;

namespace {

// Arc of radius 1/lambda through (0, 0) and (1, 0), written out independently.
double arc(double lambda, double x) {
  const double r = 1.0 / lambda;
  return std::sqrt(r * r - (x - 0.5) * (x - 0.5)) - std::sqrt(r * r - 0.25);
}

double sup_error(const GridFunction& u, double lambda) {
  const auto v = u.nodal();
  double err = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) err = std::max(err, std::abs(v[i] - arc(lambda, u.grid().x(i))));
  return err;
}

ErrorCode solve_error(const CurvatureField& f, const BoundaryCondition& bc, std::size_t n, SolveParams p = {}) {
  try {
    (void)solve(f, bc, Grid(0, 1, n), p);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "solve succeeded";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Params, Validation) {
  SolveParams p;
  EXPECT_NO_THROW(validate(p));
  p.damping = 0.0;
  EXPECT_THROW(validate(p), Error);
  p = {};
  p.s_min = 1.0;
  p.s_max = 0.0;
  EXPECT_THROW(validate(p), Error);
}

TEST(Energy, ValuesPerBoundaryCondition) {
  const Grid g(0.0, 1.0, 4);
  const std::vector<double> load(5, 1.0);
  const std::vector<double> v = {0.1, 0.2, 0.2, 0.1, -0.1};
  double area = 0.0;
  for (int i = 0; i < 4; ++i) area += std::hypot(0.25, v[i + 1] - v[i]);
  const double work = 0.25 * (0.5 * 0.1 + 0.2 + 0.2 + 0.1 + 0.5 * -0.1);
  EXPECT_NEAR(DiscreteEnergy(g, load, Dirichlet{0, 0}).value(v), area + 0.1 + 0.1 - work, 1e-15);
  EXPECT_NEAR(DiscreteEnergy(g, load, Neumann{0.5, -0.5}).value(v), area + 0.05 - 0.05 - work, 1e-15);
  EXPECT_NEAR(DiscreteEnergy(g, load, Robin{-1, 0, 2, 0}).value(v), area + 0.5 * 0.01 + 0.01 - work, 1e-15);
  EXPECT_NEAR(DiscreteEnergy(g, load, Periodic{}).value(v), area + std::hypot(0.25, 0.2) - 0.25 - work, 1e-15);
  EXPECT_NEAR(DiscreteEnergy(g, load, Periodic{}).excess_value(v), DiscreteEnergy(g, load, Periodic{}).value(v) - 1.0,
              1e-14);
}

TEST(Energy, SmoothGradientMatchesFiniteDifferences) {
  const Grid g(0.0, 1.0, 8);
  std::vector<double> load(9), v(9), c(9, 0.1), rho(9, 2.0);
  for (std::size_t i = 0; i < 9; ++i) {
    load[i] = std::sin(3.0 * g.x(i));
    v[i] = 0.3 * std::cos(5.0 * g.x(i));
  }
  for (const BoundaryCondition& bc :
       {BoundaryCondition(Neumann{0.2, -0.3}), BoundaryCondition(Robin{-1, 0.1, 2, 0.2}), BoundaryCondition(Periodic{})}) {
    const DiscreteEnergy e = DiscreteEnergy(g, load, bc).with_prox({c, rho});
    const auto grad = e.smooth_gradient(v);
    for (std::size_t i = 0; i < 9; ++i) {
      auto vp = v, vm = v;
      vp[i] += 1e-6;
      vm[i] -= 1e-6;
      EXPECT_NEAR(grad[i], (e.value(vp) - e.value(vm)) / 2e-6, 1e-7) << bc.name() << " node " << i;
    }
  }
}

TEST(Minimize, EnergyDecreasesMonotonically) {
  const Grid g(0.0, 1.0, 200);
  const std::vector<double> load(201, 1.5);
  const DiscreteEnergy e(g, load, Dirichlet{0.0, 0.0});
  const auto r = minimize_energy(e, GridFunction::constant(g, 0.0), SolveParams{});
  ASSERT_GE(r.report.energies.size(), 2u);
  // steps inside the rounding band 1e-14 (1 + |E|) may be taken when the defect still drops
  for (std::size_t k = 1; k < r.report.energies.size(); ++k) {
    const double prev = r.report.energies[k - 1];
    EXPECT_LE(r.report.energies[k], prev + 1e-14 * (1 + std::abs(prev)));
  }
  EXPECT_LE(r.report.final_energy, r.report.initial_energy);
  EXPECT_LE(e.stationarity(r.v.nodal()), 1e-9);
}

TEST(Solve, CircleArcOracle) {
  for (double lambda : {0.5, 1.0, 1.9}) {
    const auto r = solve(CurvatureField::constant(lambda), Dirichlet{0, 0}, Grid(0, 1, 1000), SolveParams{});
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.outer_iterations, 1);
    EXPECT_LE(sup_error(r.u, lambda), 1e-3) << "lambda " << lambda;
  }
}

TEST(Solve, ClosedFormArcAgreesWithIndependentFormula) {
  for (double lambda : {0.3, 1.0, 2.0})
    for (double x : {0.0, 0.1, 0.5, 0.77, 1.0}) EXPECT_NEAR(circle_arc(lambda, x), arc(lambda, x), 1e-14);
  EXPECT_NEAR(circle_arc_slope(1.0, 0.0), 0.5 / std::sqrt(0.75), 1e-14);
}

TEST(Solve, RobinMatchesArcWhenMultiplierVanishesOnTheTrace) {
  // The arc has u = 0 at both ends and psi(u') = +-lambda/2 there.
  const double lambda = 1.0;
  const auto r = solve(CurvatureField::constant(lambda), Robin{-1, 0.5, 1, -0.5}, Grid(0, 1, 1000), SolveParams{});
  EXPECT_LE(sup_error(r.u, lambda), 1e-3);
}

TEST(Solve, NeumannFluxDataReproduceArc) {
  // Neumann data leave an additive constant free; compare shapes.
  const auto r = solve(CurvatureField::constant(1.0), Neumann{0.5, -0.5}, Grid(0, 1, 1000), SolveParams{});
  const auto v = r.u.nodal();
  const double shift = v[0];
  double err = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) err = std::max(err, std::abs(v[i] - shift - arc(1.0, r.u.grid().x(i))));
  EXPECT_LE(err, 1e-3);
}

TEST(Solve, StateDependentLoadConverges) {
  const auto f = CurvatureField::expression("1 + 0.5*s");
  const auto r = solve(f, Dirichlet{0, 0}, Grid(0, 1, 400), SolveParams{});
  EXPECT_TRUE(r.converged);
  EXPECT_GT(r.outer_iterations, 1);
  EXPECT_LT(r.last_change, SolveParams{}.outer_tol);
  ASSERT_EQ(r.trace.size(), static_cast<std::size_t>(r.outer_iterations));
  EXPECT_EQ(r.trace.front().iteration, 1);
}

TEST(Solve, OuterNoConvergenceCarriesIterates) {
  SolveParams p;
  p.outer_max = 2;
  try {
    (void)solve(CurvatureField::expression("1 + 0.5*s"), Dirichlet{0, 0}, Grid(0, 1, 200), p);
    FAIL() << "expected OuterNoConvergence";
  } catch (const OuterNoConvergence& e) {
    EXPECT_EQ(e.code(), ErrorCode::OuterNoConvergence);
    EXPECT_EQ(e.last().size(), 201u);
    EXPECT_EQ(e.previous().size(), 201u);
    EXPECT_EQ(e.trace().size(), 2u);
  }
}

TEST(Solve, RangeExceeded) {
  SolveParams p;
  p.s_max = 0.05;
  EXPECT_EQ(solve_error(CurvatureField::expression("1 + 0.5*s"), Dirichlet{0, 0}, 200, p), ErrorCode::RangeExceeded);
}

TEST(Solve, NonexistenceIsUnboundedBelow) {
  EXPECT_EQ(solve_error(CurvatureField::constant(2.5), Dirichlet{0, 0}, 400), ErrorCode::UnboundedBelow);
  EXPECT_EQ(solve_error(CurvatureField::step(0.5, 3, -3), Neumann{0, 0}, 400), ErrorCode::UnboundedBelow);
}

TEST(Solve, MaxIterationsWhenBudgetTooSmall) {
  SolveParams p;
  p.inner_max = 1;
  EXPECT_EQ(solve_error(CurvatureField::constant(1.9), Dirichlet{0, 0}, 1000, p), ErrorCode::MaxIterations);
}

TEST(Solve, Deterministic) {
  const auto f = CurvatureField::expression("1 + 0.5*s");
  const auto a = solve(f, Dirichlet{0, 0}, Grid(0, 1, 300), SolveParams{});
  const auto b = solve(f, Dirichlet{0, 0}, Grid(0, 1, 300), SolveParams{});
  EXPECT_EQ(a.u.nodal(), b.u.nodal());
  EXPECT_EQ(a.outer_iterations, b.outer_iterations);
}

TEST(Solve, StateLipschitz) {
  const Grid g(0, 1, 4);
  const std::vector<double> u = {0, 1, 2, 3, 4};
  const auto L = state_lipschitz(CurvatureField::expression("x*s*s"), g, u);
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(L[i], std::abs(2.0 * g.x(i) * u[i]), 1e-6);
}
