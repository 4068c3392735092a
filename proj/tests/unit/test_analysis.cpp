#include <gtest/gtest.h>

#include <cmath>

#include "curvlab/boundary_checks.hpp"
#include "curvlab/classify.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/momentum.hpp"
#include "curvlab/probes.hpp"
#include "curvlab/solve.hpp"
#include "curvlab/weak_form.hpp"

using namespace curvlab;

namespace {

const char* kJumpLoad = "4*exp(0-s)*(1+sgn(0.5-x))/2 - 4*exp(s)*(1-sgn(0.5-x))/2";

GridFunction sample(const Grid& g, auto&& fn) {
  std::vector<double> v(g.nodes());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(g.x(i));
  return GridFunction::from_nodal(g, std::move(v));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

struct JumpFixture : ::testing::Test {
  static void SetUpTestSuite() {
    f = new CurvatureField(CurvatureField::expression(kJumpLoad));
    solved = new SolveResult(solve(*f, Neumann{0, 0}, Grid(0, 1, 2000), SolveParams{}));
  }
  static void TearDownTestSuite() {
    delete f;
    delete solved;
  }
  static CurvatureField* f;
  static SolveResult* solved;
};
CurvatureField* JumpFixture::f = nullptr;
SolveResult* JumpFixture::solved = nullptr;

}  // namespace

TEST(Momentum, ReproducesArc) {
  const Grid g(0, 1, 500);
  const auto r = momentum_integrate(CurvatureField::constant(1.0), 0.0, 0.5, g);
  EXPECT_FALSE(r.event.has_value());
  EXPECT_EQ(r.last_node, 500u);
  const auto v = r.u.nodal();
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(v[i], circle_arc(1.0, g.x(i)), 1e-9);
  EXPECT_EQ(r.p.p.size(), 500u);
  EXPECT_NEAR(r.p.p[0], 0.5 - 0.5 * g.h(), 1e-9);
}

TEST(Momentum, SaturationEvent) {
  const double p_tol = 1e-4;
  const auto r = momentum_integrate(CurvatureField::constant(3.0), 0.0, 0.5, Grid(0, 1, 100), p_tol);
  ASSERT_TRUE(r.event.has_value());
  // p(x) = 0.5 - 3x hits -(1 - p_tol)
  EXPECT_NEAR(r.event->x, (1.5 - p_tol) / 3.0, 1e-9);
  EXPECT_EQ(r.event->sign, -1);
  EXPECT_FALSE(r.event->reduced_confidence);
  EXPECT_EQ(r.p.p.back(), -1.0);
  EXPECT_LT(r.last_node, 50u);
  EXPECT_THROW((void)momentum_integrate(CurvatureField::constant(1.0), 0.0, 1.0, Grid(0, 1, 10)), Error);
}

TEST(WeakForm, ArcPassesPerturbationFails) {
  const auto f = CurvatureField::constant(1.0);
  const auto r = solve(f, Dirichlet{0, 0}, Grid(0, 1, 400), SolveParams{});
  const auto rep = verify_weak_form(r.u, f, Dirichlet{0, 0}, 1e-6);
  EXPECT_TRUE(rep.pass);
  EXPECT_LE(rep.max_hat_residual, 1e-6);
  EXPECT_EQ(rep.hat_residuals.size(), 399u);
  auto v = r.u.nodal();
  v[200] += 1e-3;
  EXPECT_FALSE(verify_weak_form(GridFunction::from_nodal(r.u.grid(), v), f, Dirichlet{0, 0}, 1e-6).pass);
}

TEST(WeakForm, NeumannRowsIncludeBoundary) {
  const auto f = CurvatureField::constant(1.0);
  const auto r = solve(f, Neumann{0.5, -0.5}, Grid(0, 1, 400), SolveParams{});
  const auto rep = verify_weak_form(r.u, f, Neumann{0.5, -0.5}, 1e-6);
  EXPECT_EQ(rep.hat_residuals.size(), 401u);
  EXPECT_TRUE(rep.pass);
  EXPECT_FALSE(verify_weak_form(r.u, f, Neumann{0.4, -0.5}, 1e-6).pass);
}

TEST_F(JumpFixture, SolutionJumpsDownAtChangePoint) {
  ASSERT_TRUE(solved->converged);
  const auto c = classify_solution(solved->u, *f);
  ASSERT_EQ(c.report.jumps.size(), 1u);
  const JumpRecord& j = c.report.jumps[0];
  EXPECT_NEAR(j.location, 0.5, 1e-3);
  EXPECT_EQ(j.direction, -1);
  EXPECT_GT(j.u_left, j.u_right);
  EXPECT_FALSE(j.continuous_blowup);
  EXPECT_EQ(c.report.taxonomy_case, TaxonomyCase::III);
  EXPECT_FALSE(c.report.w21_claim);
  ASSERT_EQ(c.u.jumps().size(), 1u);
  const auto w = verify_weak_form(c.u, *f, Neumann{0, 0}, 1e-6);
  EXPECT_TRUE(w.hat_pass);
  ASSERT_EQ(w.atoms.size(), 1u);
  EXPECT_TRUE(w.atoms[0].admissible);
  EXPECT_LE(w.atoms[0].flux_defect, 1e-4);
  EXPECT_TRUE(w.pass);
}

TEST_F(JumpFixture, OdeCrossCheckStopsAtSaturation) {
  const auto& g = solved->u.grid();
  const auto v = solved->u.nodal();
  const auto p = solved->u.momentum();
  const auto m = momentum_integrate(*f, v[0], p[0] + 0.5 * g.h() * (*f)(0.0, v[0]), g);
  ASSERT_TRUE(m.event.has_value());
  EXPECT_NEAR(m.event->x, 0.5, 0.01);
  EXPECT_EQ(m.event->sign, -1);
  double gap = 0.0;
  for (std::size_t i = 0; i <= m.last_node; ++i) gap = std::max(gap, std::abs(m.u.nodal()[i] - v[i]));
  EXPECT_LE(gap, 10 * g.h());
}

TEST_F(JumpFixture, U2IdentityNotApplicable) {
  const auto c = classify_solution(solved->u, *f);
  EXPECT_EQ(code_of([&] { (void)u2_integrability(c.u); }), ErrorCode::NotApplicable);
}

TEST(Classify, ArcIsConcaveCaseOne) {
  const auto f = CurvatureField::constant(1.0);
  const auto r = solve(f, Dirichlet{0, 0}, Grid(0, 1, 1000), SolveParams{});
  const auto c = classify_solution(r.u, f);
  EXPECT_EQ(c.report.taxonomy_case, TaxonomyCase::I);
  ASSERT_EQ(c.report.shapes.size(), 1u);
  EXPECT_EQ(c.report.shapes[0].shape, Shape::Concave);
  EXPECT_EQ(c.report.left.status, SlopeStatus::Finite);
  EXPECT_NEAR(c.report.left.slope, circle_arc_slope(1.0, 0.0), 1e-3);
  EXPECT_TRUE(c.report.w21_claim);
  EXPECT_TRUE(c.report.jumps.empty());
  EXPECT_EQ(c.report.criteria_verdicts.size(), 2u);
}

TEST(Classify, NegativeLoadIsConvexCaseTwo) {
  const auto f = CurvatureField::constant(-1.0);
  const auto r = solve(f, Dirichlet{0, 0}, Grid(0, 1, 500), SolveParams{});
  const auto c = classify_solution(r.u, f);
  EXPECT_EQ(c.report.taxonomy_case, TaxonomyCase::II);
  EXPECT_EQ(c.report.shapes[0].shape, Shape::Convex);
}

TEST(Classify, FrontierHasInfiniteEndSlopes) {
  const auto f = CurvatureField::constant(2.0);
  const auto r = solve(f, Dirichlet{0, 0}, Grid(0, 1, 4000), SolveParams{});
  const auto c = classify_solution(r.u, f);
  EXPECT_EQ(c.report.left.status, SlopeStatus::PlusInfinity);
  EXPECT_EQ(c.report.right.status, SlopeStatus::MinusInfinity);
  EXPECT_FALSE(c.report.w21_claim);
  const auto [pa, pb] = boundary_fluxes(r.u, f);
  EXPECT_GE(pa, 1 - 5e-4);
  EXPECT_LE(pb, -(1 - 5e-4));
}

TEST(Classify, ShapeViolations) {
  const Grid g(0, 1, 100);
  const auto convex = sample(g, [](double x) { return x * x; });
  EXPECT_EQ(code_of([&] { (void)classify_solution(convex, CurvatureField::constant(1.0)); }), ErrorCode::ShapeViolation);
  const auto up = sample(g, [](double x) { return x < 0.499 ? 0.0 : (x > 0.501 ? 1.0 : 0.5); });
  EXPECT_EQ(code_of([&] { (void)classify_solution(up, CurvatureField::step(0.5, 1, -1)); }), ErrorCode::ShapeViolation);
}

TEST(Classify, AttachedCriteriaForPowerSign) {
  const auto f = CurvatureField::power_sign(0.5, 1.0, 1.5);
  const auto r = solve(f, Neumann{0, 0}, Grid(0, 1, 400), SolveParams{});
  const auto c = classify_solution(r.u, f);
  bool interior = false;
  for (const auto& a : c.report.criteria_verdicts) {
    if (a.point == 0.5) {
      interior = true;
      EXPECT_EQ(a.verdict.holds, criteria::Holds::Guaranteed) << a.label;
      EXPECT_FALSE(a.verdict.heuristic);
    }
  }
  EXPECT_TRUE(interior);
}

TEST(BoundaryChecks, DirichletAttainedNeumannResidual) {
  const auto f = CurvatureField::constant(1.0);
  const auto r = solve(f, Dirichlet{0, 0}, Grid(0, 1, 1000), SolveParams{});
  const auto b = boundary_attainment(r.u, f, Dirichlet{0, 0});
  EXPECT_EQ(b.condition, "dirichlet");
  EXPECT_TRUE(b.left.attained);
  EXPECT_TRUE(b.right.attained);
  EXPECT_NEAR(b.left.flux, 0.5, 1e-6);
  EXPECT_FALSE(b.left.saturated);
  const auto rn = solve(f, Neumann{0.5, -0.5}, Grid(0, 1, 1000), SolveParams{});
  const auto bn = boundary_attainment(rn.u, f, Neumann{0.5, -0.5});
  EXPECT_LE(std::abs(bn.left.residual), 1e-8);
  EXPECT_LE(std::abs(bn.right.residual), 1e-8);
}

TEST(BoundaryChecks, PeriodicGaps) {
  const auto f = CurvatureField::expression("sin(6.283185307179586*x)");
  const auto r = solve(f, Periodic{}, Grid(0, 1, 1000), SolveParams{});
  const auto b = boundary_attainment(r.u, f, Periodic{});
  // the seam cell closes the loop, so the traces differ by O(h)
  EXPECT_LE(b.value_gap, 10 * r.u.grid().h());
  EXPECT_LE(b.flux_gap, 10 * r.u.grid().h());
}

TEST(BoundaryChecks, U2IdentityOnArc) {
  const auto r = solve(CurvatureField::constant(1.0), Dirichlet{0, 0}, Grid(0, 1, 1000), SolveParams{});
  const auto u2 = u2_integrability(r.u);
  EXPECT_LE(u2.gap, 10 * r.u.grid().h());
  // int |u''| = u'(0) - u'(1) for a concave arc
  EXPECT_NEAR(u2.lhs, 2 * circle_arc_slope(1.0, 0.0), 1e-2);
}

TEST(Probes, ExplicitDeadCore) {
  OdeInstance inst;
  inst.rhs = {OdeRhs::Kind::Power, 1.0, 1.0 / 3.0, std::nullopt};
  inst.comparison = {1.0, 1.0 / 3.0, 0.0, 0.5, false};
  const double k = std::pow(1.0 / 6.0, 1.5);
  Trajectory tr;
  for (int i = 0; i <= 2000; ++i) {
    const double t = i / 2000.0;
    const double d = std::max(0.0, t - 0.4);
    tr.t.push_back(t);
    tr.v.push_back(k * d * d * d);
    tr.dv.push_back(3 * k * d * d);
  }
  const auto res = positivity_probe(inst, tr);
  EXPECT_EQ(res.outcome, PositivityOutcome::DeadCoreFound);
  EXPECT_NEAR(res.location, 0.4, 1e-3);
  EXPECT_EQ(res.verdict.holds, criteria::Holds::NotGuaranteed);
  EXPECT_FALSE(res.contradiction);
  inst.epsilon = 1e-30;
  EXPECT_EQ(code_of([&] { (void)positivity_probe(inst, tr); }), ErrorCode::LocalizationUnverifiable);
}

TEST(Probes, StronglyPositiveAndTangency) {
  OdeInstance inst;
  inst.rhs = {OdeRhs::Kind::Linear, 1.0, 1.0, std::nullopt};
  inst.v0 = 1.0;
  inst.dv0 = 0.0;
  inst.comparison = {1.0, 2.0, 0.0, 0.5, false};
  const auto pos = positivity_probe(inst, 400);
  EXPECT_EQ(pos.outcome, PositivityOutcome::StronglyPositive);
  EXPECT_FALSE(pos.contradiction);
  OdeInstance tan = inst;
  tan.rhs = {OdeRhs::Kind::Expression, 0, 0, Expr::parse("2")};
  tan.v0 = 0.0;
  tan.dv0 = 0.0;
  const auto res = positivity_probe(tan, 400);
  EXPECT_EQ(res.outcome, PositivityOutcome::BoundaryTangency);
  EXPECT_EQ(res.location, 0.0);
  EXPECT_NEAR(comparison_derivative({1.0, 2.0, 0.0, 0.5, false}, 0.25), 0.5, 1e-12);
}

TEST(Probes, Osgood) {
  const criteria::StateEnvelope root{1.0, 0.5, 0.0, 0.5};
  const criteria::StateEnvelope lin{1.0, 1.0, 0.0, 0.5};
  Trajectory tr;
  for (int i = 0; i <= 1000; ++i) {
    const double t = i / 1000.0;
    const double d = std::max(0.0, t - 0.5);
    tr.t.push_back(t);
    tr.v.push_back(d * d / 4);
    tr.dv.push_back(d / 2);
  }
  const auto res = osgood_probe(root, root, tr);
  EXPECT_TRUE(res.sign_change_found);
  EXPECT_EQ(res.verdict.holds, criteria::Holds::NotGuaranteed);
  EXPECT_FALSE(res.contradiction);
  EXPECT_EQ(code_of([&] { (void)osgood_probe(lin, lin, tr); }), ErrorCode::InequalityViolated);
  Trajectory decay;
  for (int i = 0; i <= 1000; ++i) {
    const double t = i / 1000.0;
    decay.t.push_back(t);
    decay.v.push_back(0.1 * std::exp(-t));
    decay.dv.push_back(-0.1 * std::exp(-t));
  }
  const auto ok = osgood_probe(lin, lin, decay);
  EXPECT_FALSE(ok.sign_change_found);
  EXPECT_EQ(ok.verdict.holds, criteria::Holds::Guaranteed);
  EXPECT_FALSE(ok.contradiction);
}
