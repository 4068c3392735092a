#include "curvlab/criteria.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "curvlab/errors.hpp"

namespace curvlab::criteria {

const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }
const char* to_string(Bound b) { return b == Bound::UpperMu ? "upper" : "lower"; }
const char* to_string(EndpointCase c) {
  switch (c) {
    case EndpointCase::J: return "j";
    case EndpointCase::JJ: return "jj";
    case EndpointCase::JJJ: return "jjj";
    case EndpointCase::JJJJ: return "jjjj";
  }
  return "?";
}
const char* to_string(InteriorCase c) { return c == InteriorCase::H ? "h" : "hh"; }
const char* to_string(Holds h) { return h == Holds::Guaranteed ? "guaranteed" : "not_guaranteed"; }

namespace {

CriterionVerdict verdict(bool divergent, bool positive, std::string detail) {
  CriterionVerdict v;
  v.divergent = divergent;
  v.antiderivative_positive = positive;
  v.holds = (divergent && positive) ? Holds::Guaranteed : Holds::NotGuaranteed;
  v.detail = std::move(detail);
  return v;
}

[[noreturn]] void shape_error(const std::string& what) { throw Error(ErrorCode::CriterionShapeError, what); }

CriterionVerdict envelope_verdict(const std::string& label, const Envelope& env) {
  const bool div = powerlog_sqrt_divergence(env.alpha, env.beta);
  std::ostringstream os;
  os.precision(17);
  os << label << ": |M(d)| ~ " << env.C << " d^" << env.alpha + 1.0 << " |log d|^" << env.beta << " / "
     << env.alpha + 1.0 << "; integral of |M|^(-1/2) " << (div ? "diverges" : "converges");
  // Within the power-log family with C > 0 the antiderivative keeps the sign of the bound on (0, delta].
  return verdict(div, true, os.str());
}

}  // namespace

void validate(const Envelope& env) {
  if (!(env.C > 0.0) || !std::isfinite(env.C)) throw Error(ErrorCode::InvalidArgument, "envelope amplitude C must be > 0");
  if (!std::isfinite(env.beta) || !std::isfinite(env.point))
    throw Error(ErrorCode::InvalidArgument, "envelope parameters must be finite");
  if (!(env.delta > 0.0 && env.delta < 1.0)) throw Error(ErrorCode::InvalidArgument, "envelope delta must lie in (0, 1)");
  if (!(env.alpha > -1.0)) throw Error(ErrorCode::NotLocallyIntegrable, "envelope power alpha must exceed -1");
}

bool powerlog_sqrt_divergence(double alpha, double beta) {
  if (!(alpha > -1.0)) throw Error(ErrorCode::NotLocallyIntegrable, "d^alpha is not integrable at 0 for alpha <= -1");
  if (alpha > 1.0) return true;
  return alpha == 1.0 && beta <= 2.0;
}

CriterionVerdict endpoint_regularity(EndpointCase which, const Envelope& env) {
  validate(env);
  const bool at_a = which == EndpointCase::J || which == EndpointCase::JJJ;
  const bool upper = which == EndpointCase::J || which == EndpointCase::JJ;
  if (at_a && env.side != Side::Right) shape_error(std::string("case (") + to_string(which) + ") looks right from a");
  if (!at_a && env.side != Side::Left) shape_error(std::string("case (") + to_string(which) + ") looks left from b");
  if (upper != (env.bound == Bound::UpperMu))
    shape_error(std::string("case (") + to_string(which) + ") needs a " + (upper ? "upper bound mu" : "lower bound nu"));
  return envelope_verdict(std::string("(") + to_string(which) + ")", env);
}

CriterionVerdict interior_regularity(InteriorCase which, const Envelope& env, double a, double b) {
  validate(env);
  if (!(env.point > a && env.point < b)) shape_error("interior criteria need a change point strictly inside (a, b)");
  const bool left = env.side == Side::Left;
  const bool needs_mu = (which == InteriorCase::H) == left;
  if (needs_mu != (env.bound == Bound::UpperMu))
    shape_error(std::string("case (") + to_string(which) + ") on the " + to_string(env.side) + " side needs a " +
                (needs_mu ? "upper bound mu" : "lower bound nu"));
  return envelope_verdict(std::string("(") + to_string(which) + ", " + to_string(env.side) + ")", env);
}

CriterionVerdict smp_check(const ComparisonG& g) {
  if (!(g.epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "comparison epsilon must be > 0");
  if (g.zero_case) return verdict(true, true, "G = 0 on (0, eps]: strong positivity holds");
  if (!(g.C > 0.0) || !(g.p > 0.0) || !std::isfinite(g.q))
    throw Error(ErrorCode::InvalidArgument, "comparison G needs C > 0 and p > 0");
  const bool div = g.p > 2.0 || (g.p == 2.0 && g.q <= 2.0);
  std::ostringstream os;
  os.precision(17);
  os << "G(s) ~ " << g.C << " s^" << g.p << " |log s|^" << g.q << "; integral of G^(-1/2) "
     << (div ? "diverges" : "converges");
  return verdict(div, true, os.str());
}

double evaluate(const StateEnvelope& h, double s) {
  const double d = std::abs(s);
  if (d == 0.0) return 0.0;
  return h.C * std::pow(d, h.q) * std::pow(std::abs(std::log(d)), h.r);
}

CriterionVerdict osgood_check(const StateEnvelope& left, const StateEnvelope& right) {
  auto side = [](const StateEnvelope& h, const char* name, std::ostringstream& os) {
    if (!(h.C > 0.0) || !(h.epsilon > 0.0 && h.epsilon < 1.0) || !std::isfinite(h.q) || !std::isfinite(h.r))
      throw Error(ErrorCode::InvalidArgument, "Osgood envelope needs C > 0 and eps in (0, 1)");
    const bool div = h.q > 1.0 || (h.q == 1.0 && h.r <= 1.0);
    os << name << ": H ~ " << h.C << " |s|^" << h.q << " |log|s||^" << h.r << " -> " << (div ? "diverges" : "converges")
       << "; ";
    return div;
  };
  std::ostringstream os;
  os.precision(17);
  const bool l = side(left, "left", os);
  const bool r = side(right, "right", os);
  return verdict(l && r, true, os.str());
}

CriterionVerdict heuristic_sqrt_divergence(std::span<const double> d, std::span<const double> mu) {
  if (d.size() != mu.size() || d.size() < 8) throw Error(ErrorCode::InvalidArgument, "need at least 8 tabulated samples");
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0) || (i > 0 && !(d[i] > d[i - 1])))
      throw Error(ErrorCode::InvalidArgument, "tabulated distances must be positive and increasing");
  }
  // M on the first sample approximated by a constant bound on (0, d0].
  std::vector<double> M(d.size());
  M[0] = mu[0] * d[0];
  for (std::size_t i = 1; i < d.size(); ++i) M[i] = M[i - 1] + 0.5 * (mu[i] + mu[i - 1]) * (d[i] - d[i - 1]);
  bool positive = true;
  for (double m : M) positive = positive && m > 0.0;
  if (!positive) {
    CriterionVerdict v = verdict(false, false, "tabulated M is not positive on the sampled range");
    v.heuristic = true;
    return v;
  }
  // Least-squares slope of log M against log d over the innermost half of the samples.
  const std::size_t m = d.size() / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double lx = std::log(d[i]);
    const double ly = std::log(M[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double k = static_cast<double>(m);
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  const bool div = slope >= 1.95;
  std::ostringstream os;
  os.precision(6);
  os << "heuristic: fitted M ~ d^" << slope << " near 0; integral of M^(-1/2) " << (div ? "diverges" : "converges");
  CriterionVerdict v = verdict(div, true, os.str());
  v.heuristic = true;
  return v;
}

}  // namespace curvlab::criteria
