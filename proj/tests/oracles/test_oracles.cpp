#include <gtest/gtest.h>

#include <cmath>

#include "curvlab/classify.hpp"
#include "curvlab/criteria.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/solve.hpp"
#include "divergence_oracle.hpp"

using namespace curvlab;
using namespace curvlab::criteria;

namespace {

bool oracle_divergent(const oracle::Trace& t) {
  EXPECT_NE(t.verdict, oracle::Verdict::Undecided);
  return t.verdict == oracle::Verdict::Divergent;
}

// Bisection of a monotone indicator on [lo, hi] down to width tol.
double bisect(double lo, double hi, double tol, auto&& singular) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (singular(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(Oracle, DecisionTableAgreement) {
  for (double a : {-0.5, 0.0, 0.5, 1.0, 1.5, 2.0}) {
    for (double b : {-2.0, 0.0, 2.0, 3.0}) {
      const auto t = oracle::sqrt_antiderivative(a, b);
      EXPECT_EQ(powerlog_sqrt_divergence(a, b), oracle_divergent(t)) << "alpha " << a << " beta " << b;
    }
  }
}

TEST(Oracle, AmplitudeDoesNotMatter) {
  for (double C : {0.01, 7.0}) {
    EXPECT_TRUE(oracle_divergent(oracle::sqrt_antiderivative(1.0, 2.0, C)));
    EXPECT_FALSE(oracle_divergent(oracle::sqrt_antiderivative(0.5, 0.0, C)));
  }
}

TEST(Oracle, SmpExamples) {
  for (auto [p, q] : {std::pair{2.0, 0.0}, {1.5, 0.0}, {2.0, 2.0}, {2.0, 3.0}, {3.0, 5.0}, {1.0 / 3.0, 0.0}}) {
    const bool expected = oracle_divergent(oracle::power_log(p / 2.0, q / 2.0));
    EXPECT_EQ(smp_check({1.0, p, q, 0.5, false}).holds == Holds::Guaranteed, expected) << p << " " << q;
  }
}

TEST(Oracle, OsgoodExamples) {
  for (auto [q, r] : {std::pair{1.0, 0.0}, {0.5, 0.0}, {1.0, 1.0}, {1.0, 1.5}, {2.0, 0.0}}) {
    const bool expected = oracle_divergent(oracle::power_log(q, r));
    const StateEnvelope h{1.0, q, r, 0.5};
    EXPECT_EQ(osgood_check(h, h).holds == Holds::Guaranteed, expected) << q << " " << r;
  }
}

TEST(Oracle, EndpointExamples) {
  Envelope e;
  e.alpha = 1.0;
  EXPECT_EQ(endpoint_regularity(EndpointCase::J, e).holds == Holds::Guaranteed,
            oracle_divergent(oracle::sqrt_antiderivative(1.0, 0.0)));
  e.alpha = 0.5;
  EXPECT_EQ(endpoint_regularity(EndpointCase::J, e).holds == Holds::Guaranteed,
            oracle_divergent(oracle::sqrt_antiderivative(0.5, 0.0)));
}

TEST(Bisection, BlowUpFrontierAtLambdaTwo) {
  const double p_tol = 1e-4;
  auto singular = [&](double lambda) {
    const auto f = CurvatureField::constant(lambda);
    try {
      const auto r = solve(f, Dirichlet{0, 0}, Grid(0, 1, 4000), SolveParams{});
      const auto [pa, pb] = boundary_fluxes(r.u, f);
      return std::abs(pa) >= 1 - 5 * p_tol && std::abs(pb) >= 1 - 5 * p_tol;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnboundedBelow) throw;
      return true;
    }
  };
  EXPECT_FALSE(singular(1.0));
  EXPECT_TRUE(singular(2.0));
  EXPECT_NEAR(bisect(1.0, 3.0, 0.01, singular), 2.0, 0.05);
}

TEST(Bisection, StepAmplitudeThreshold) {
  const double p_tol = 1e-4;
  auto singular = [&](double A) {
    try {
      const auto r = solve(CurvatureField::step(0.5, A, -A), Neumann{0, 0}, Grid(0, 1, 2000), SolveParams{});
      for (double p : r.u.momentum())
        if (std::abs(p) >= 1 - p_tol) return true;
      return false;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnboundedBelow) throw;
      return true;
    }
  };
  EXPECT_NEAR(bisect(1.0, 3.0, 0.01, singular), 2.0, 0.05);
}
