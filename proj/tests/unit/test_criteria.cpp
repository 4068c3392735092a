#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "curvlab/criteria.hpp"
#include "curvlab/errors.hpp"

using namespace curvlab;
using namespace curvlab::criteria;

namespace {

Envelope env(double point, Side side, double alpha, double beta = 0.0, Bound bound = Bound::UpperMu) {
  Envelope e;
  e.point = point;
  e.side = side;
  e.alpha = alpha;
  e.beta = beta;
  e.bound = bound;
  return e;
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

}  // namespace

TEST(Powerlog, Examples) {
  EXPECT_TRUE(powerlog_sqrt_divergence(1, 0));
  EXPECT_FALSE(powerlog_sqrt_divergence(0.5, 0));
  EXPECT_TRUE(powerlog_sqrt_divergence(2, 0));
  EXPECT_FALSE(powerlog_sqrt_divergence(1, 3));
  EXPECT_TRUE(powerlog_sqrt_divergence(1, 2));
  EXPECT_EQ(code_of([] { (void)powerlog_sqrt_divergence(-1, 0); }), ErrorCode::NotLocallyIntegrable);
}

TEST(Endpoint, Examples) {
  EXPECT_EQ(endpoint_regularity(EndpointCase::J, env(0, Side::Right, 1)).holds, Holds::Guaranteed);
  EXPECT_EQ(endpoint_regularity(EndpointCase::J, env(0, Side::Right, 0.5)).holds, Holds::NotGuaranteed);
  EXPECT_EQ(endpoint_regularity(EndpointCase::JJJJ, env(1, Side::Left, 2, 0, Bound::LowerNu)).holds, Holds::Guaranteed);
}

TEST(Endpoint, ShapeMismatch) {
  EXPECT_EQ(code_of([] { (void)endpoint_regularity(EndpointCase::J, env(0, Side::Left, 1)); }),
            ErrorCode::CriterionShapeError);
  EXPECT_EQ(code_of([] { (void)endpoint_regularity(EndpointCase::JJ, env(1, Side::Right, 1)); }),
            ErrorCode::CriterionShapeError);
  EXPECT_EQ(code_of([] { (void)endpoint_regularity(EndpointCase::JJJ, env(0, Side::Right, 1)); }),
            ErrorCode::CriterionShapeError);
  EXPECT_EQ(code_of([] { (void)endpoint_regularity(EndpointCase::J, env(0, Side::Right, -1.5)); }),
            ErrorCode::NotLocallyIntegrable);
}

TEST(Interior, Examples) {
  EXPECT_EQ(interior_regularity(InteriorCase::H, env(0.5, Side::Left, 1), 0, 1).holds, Holds::Guaranteed);
  EXPECT_EQ(interior_regularity(InteriorCase::H, env(0.5, Side::Left, 0), 0, 1).holds, Holds::NotGuaranteed);
  EXPECT_EQ(interior_regularity(InteriorCase::HH, env(0.5, Side::Right, 3), 0, 1).holds, Holds::Guaranteed);
  EXPECT_EQ(interior_regularity(InteriorCase::H, env(0.5, Side::Right, 1, 0, Bound::LowerNu), 0, 1).holds,
            Holds::Guaranteed);
}

TEST(Interior, AnchoredAtEndpointRejected) {
  EXPECT_EQ(code_of([] { (void)interior_regularity(InteriorCase::H, env(0, Side::Left, 1), 0, 1); }),
            ErrorCode::CriterionShapeError);
  EXPECT_EQ(code_of([] { (void)interior_regularity(InteriorCase::H, env(1, Side::Left, 1), 0, 1); }),
            ErrorCode::CriterionShapeError);
}

TEST(Smp, Examples) {
  EXPECT_EQ(smp_check({1, 2, 0, 0.5, false}).holds, Holds::Guaranteed);
  EXPECT_EQ(smp_check({1, 1.5, 0, 0.5, false}).holds, Holds::NotGuaranteed);
  EXPECT_EQ(smp_check({1, 2, 2, 0.5, false}).holds, Holds::Guaranteed);
  EXPECT_EQ(smp_check({1, 2, 2.5, 0.5, false}).holds, Holds::NotGuaranteed);
  EXPECT_EQ(smp_check({1, 0.5, 0, 0.5, true}).holds, Holds::Guaranteed);
}

TEST(Osgood, Examples) {
  const StateEnvelope lin{1, 1, 0, 0.5};
  const StateEnvelope root{1, 0.5, 0, 0.5};
  const StateEnvelope loglin{1, 1, 1, 0.5};
  EXPECT_EQ(osgood_check(lin, lin).holds, Holds::Guaranteed);
  EXPECT_EQ(osgood_check(root, root).holds, Holds::NotGuaranteed);
  EXPECT_EQ(osgood_check(loglin, loglin).holds, Holds::Guaranteed);
  EXPECT_EQ(osgood_check(lin, root).holds, Holds::NotGuaranteed);
  EXPECT_NEAR(evaluate(loglin, -0.25), 0.25 * std::log(4.0), 1e-15);
}

TEST(VerdictInvariant, GuaranteedIffDivergentAndPositive) {
  for (double a : {-0.5, 0.0, 0.5, 1.0, 1.5, 2.0}) {
    for (double b : {-2.0, 0.0, 2.0, 3.0}) {
      const auto v = endpoint_regularity(EndpointCase::J, env(0, Side::Right, a, b));
      EXPECT_EQ(v.holds == Holds::Guaranteed, v.divergent && v.antiderivative_positive);
      EXPECT_FALSE(v.heuristic);
      EXPECT_FALSE(v.detail.empty());
    }
  }
}

TEST(CriteriaProperty, ReflectionSymmetry) {
  for (double a : {-0.5, 0.0, 0.5, 1.0, 1.5, 2.0}) {
    for (double b : {-2.0, 0.0, 2.0, 3.0}) {
      const auto j = endpoint_regularity(EndpointCase::J, env(0, Side::Right, a, b));
      const auto jj = endpoint_regularity(EndpointCase::JJ, env(1, Side::Left, a, b));
      EXPECT_EQ(j.holds, jj.holds);
      const auto jjj = endpoint_regularity(EndpointCase::JJJ, env(0, Side::Right, a, b, Bound::LowerNu));
      const auto jjjj = endpoint_regularity(EndpointCase::JJJJ, env(1, Side::Left, a, b, Bound::LowerNu));
      EXPECT_EQ(j.holds, jjj.holds);
      EXPECT_EQ(jj.holds, jjjj.holds);
    }
  }
}

TEST(CriteriaProperty, MonotoneInAlpha) {
  const std::vector<double> alphas = {-0.9, -0.5, 0, 0.5, 0.9, 1, 1.1, 1.5, 2, 3, 5};
  for (double b : {-4.0, -2.0, 0.0, 1.0, 2.0, 2.5, 3.0, 6.0}) {
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      if (!powerlog_sqrt_divergence(alphas[i], b)) continue;
      for (std::size_t k = i + 1; k < alphas.size(); ++k) EXPECT_TRUE(powerlog_sqrt_divergence(alphas[k], b));
    }
  }
}

TEST(Heuristic, FitsPowerLaw) {
  std::vector<double> d, mu_lin, mu_root;
  for (int k = 0; k < 200; ++k) {
    const double x = 0.5 * std::pow(10.0, -6.0 * (199 - k) / 199.0);
    d.push_back(x);
    mu_lin.push_back(2.0 * x);
    mu_root.push_back(std::sqrt(x));
  }
  const auto lin = heuristic_sqrt_divergence(d, mu_lin);
  EXPECT_TRUE(lin.heuristic);
  EXPECT_EQ(lin.holds, Holds::Guaranteed);
  const auto root = heuristic_sqrt_divergence(d, mu_root);
  EXPECT_TRUE(root.heuristic);
  EXPECT_EQ(root.holds, Holds::NotGuaranteed);
  EXPECT_THROW((void)heuristic_sqrt_divergence(std::vector<double>{0.1, 0.2}, std::vector<double>{1, 1}), Error);
}
