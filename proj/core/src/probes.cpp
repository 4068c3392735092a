#include "curvlab/probes.hpp"

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <sstream>

#include "curvlab/errors.hpp"

namespace curvlab {

double OdeRhs::operator()(double t, double s, double xi) const {
  switch (kind) {
    case Kind::Power: return c * std::pow(std::abs(s), q);
    case Kind::Linear: return c * s;
    case Kind::CurvatureInverse: return c * std::pow(std::abs(s), q) * std::pow(1.0 + xi * xi, 1.5);
    case Kind::Expression:
      if (!expr) throw Error(ErrorCode::InvalidArgument, "expression rhs without an expression");
      return expr->eval(t, s);
  }
  return 0.0;
}

std::string OdeRhs::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::Power: os << c << "*|s|^" << q; break;
    case Kind::Linear: os << c << "*s"; break;
    case Kind::CurvatureInverse: os << c << "*|s|^" << q << "*(1+xi^2)^1.5"; break;
    case Kind::Expression: os << (expr ? expr->text() : std::string("?")); break;
  }
  return os.str();
}

const char* to_string(PositivityOutcome o) {
  switch (o) {
    case PositivityOutcome::StronglyPositive: return "strongly_positive";
    case PositivityOutcome::DeadCoreFound: return "dead_core_found";
    case PositivityOutcome::BoundaryTangency: return "boundary_tangency";
  }
  return "?";
}

const char* to_string(Localization l) {
  switch (l) {
    case Localization::Holds: return "holds";
    case Localization::Fails: return "fails";
    case Localization::NotEntered: return "not_entered";
  }
  return "?";
}

double comparison_derivative(const criteria::ComparisonG& g, double s) {
  if (g.zero_case || s <= 0.0) return 0.0;
  const double l = std::abs(std::log(s));
  if (g.q == 0.0) return g.C * g.p * std::pow(s, g.p - 1.0);
  const double d = g.C * std::pow(s, g.p - 1.0) * std::pow(l, g.q - 1.0) * (g.p * l - g.q);
  return std::max(d, 0.0);
}

Trajectory integrate_instance(const OdeInstance& inst, std::size_t resolution) {
  if (!(inst.alpha < inst.omega) || resolution < 2) throw Error(ErrorCode::InvalidArgument, "need alpha < omega and >= 2 cells");
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;
  Trajectory tr;
  std::vector<double> times(resolution + 1);
  for (std::size_t i = 0; i <= resolution; ++i)
    times[i] = inst.alpha + (inst.omega - inst.alpha) * static_cast<double>(i) / static_cast<double>(resolution);
  times.back() = inst.omega;
  State y{inst.v0, inst.dv0};
  auto rhs = [&inst](const State& s, State& ds, double t) {
    ds[0] = s[1];
    ds[1] = inst.rhs(t, s[0], s[1]);
  };
  auto obs = [&tr](const State& s, double t) {
    tr.t.push_back(t);
    tr.v.push_back(s[0]);
    tr.dv.push_back(s[1]);
  };
  odeint::integrate_times(odeint::make_dense_output(1e-12, 1e-12, odeint::runge_kutta_dopri5<State>()), rhs, y,
                          times.begin(), times.end(), (inst.omega - inst.alpha) / static_cast<double>(resolution),
                          obs);
  return tr;
}

namespace {

void check_trajectory(const Trajectory& tr) {
  if (tr.t.size() < 3 || tr.v.size() != tr.t.size() || tr.dv.size() != tr.t.size())
    throw Error(ErrorCode::InvalidArgument, "trajectory needs matching t, v, v' samples (at least 3)");
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

PositivityResult positivity_probe(const OdeInstance& inst, const Trajectory& tr) {
  check_trajectory(tr);
  if (!(inst.epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  const double vmax = max_abs(tr.v);
  if (vmax == 0.0) throw Error(ErrorCode::InvalidArgument, "trivial trajectory v = 0");
  const double zero = 1e-12 * vmax;
  const double slope_zero = 1e-8 * std::max(1.0, max_abs(tr.dv));
  for (double v : tr.v)
    if (v < -zero) throw Error(ErrorCode::InvalidArgument, "trajectory must be nonnegative");

  PositivityResult res;
  res.verdict = criteria::smp_check(inst.comparison);
  const std::size_t m = tr.t.size();

  // First interior zero and the run of zeros around it.
  std::size_t first_zero = m;
  for (std::size_t i = 1; i + 1 < m; ++i)
    if (tr.v[i] <= zero) {
      first_zero = i;
      break;
    }
  if (first_zero < m) {
    std::size_t lo = first_zero;
    while (lo > 0 && tr.v[lo - 1] <= zero) --lo;
    std::size_t hi = first_zero;
    while (hi + 1 < m && tr.v[hi + 1] <= zero) ++hi;
    res.outcome = PositivityOutcome::DeadCoreFound;
    res.location = lo == 0 ? tr.t[hi] : tr.t[lo];
  } else if (tr.v.front() <= zero && std::abs(tr.dv.front()) <= slope_zero) {
    res.outcome = PositivityOutcome::BoundaryTangency;
    res.location = tr.t.front();
  } else if (tr.v.back() <= zero && std::abs(tr.dv.back()) <= slope_zero) {
    res.outcome = PositivityOutcome::BoundaryTangency;
    res.location = tr.t.back();
  }

  bool ok = true;
  for (std::size_t i = 0; i < m; ++i) {
    const double v = tr.v[i];
    if (!(v > zero && v <= inst.epsilon && std::abs(tr.dv[i]) <= inst.epsilon)) continue;
    ++res.band_samples;
    const double g = inst.rhs(tr.t[i], v, tr.dv[i]);
    const double cap = comparison_derivative(inst.comparison, v);
    if (g < 0.0 || g > cap * (1.0 + 1e-9) + 1e-300) ok = false;
  }
  res.localization = res.band_samples == 0 ? Localization::NotEntered : (ok ? Localization::Holds : Localization::Fails);

  std::ostringstream os;
  os.precision(10);
  os << to_string(res.outcome);
  if (res.outcome != PositivityOutcome::StronglyPositive) os << " at t = " << res.location;
  os << "; comparison " << criteria::to_string(res.verdict.holds) << "; localization " << to_string(res.localization)
     << " (" << res.band_samples << " band samples)";
  res.detail = os.str();

  if (res.outcome != PositivityOutcome::StronglyPositive && res.localization == Localization::NotEntered)
    throw Error(ErrorCode::LocalizationUnverifiable, "probe inconclusive: the eps band is never entered; " + res.detail);
  res.contradiction = res.outcome != PositivityOutcome::StronglyPositive &&
                      res.verdict.holds == criteria::Holds::Guaranteed && res.localization == Localization::Holds;
  return res;
}

PositivityResult positivity_probe(const OdeInstance& inst, std::size_t resolution) {
  return positivity_probe(inst, integrate_instance(inst, resolution));
}

OsgoodResult osgood_probe(const criteria::StateEnvelope& left, const criteria::StateEnvelope& right,
                          const Trajectory& tr, double tol) {
  check_trajectory(tr);
  const double vmax = max_abs(tr.v);
  if (vmax == 0.0) throw Error(ErrorCode::InvalidArgument, "trivial trajectory v = 0");
  OsgoodResult res;
  res.verdict = criteria::osgood_check(left, right);
  const std::size_t m = tr.t.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double v = tr.v[i];
    const criteria::StateEnvelope& env = v < 0.0 ? left : right;
    if (std::abs(v) > env.epsilon) continue;
    const double bound = criteria::evaluate(env, v);
    if (std::abs(tr.dv[i]) > bound * (1.0 + tol) + tol * vmax) {
      std::ostringstream os;
      os.precision(10);
      os << "|v'| = " << std::abs(tr.dv[i]) << " exceeds H(v) = " << bound << " at t = " << tr.t[i];
      throw Error(ErrorCode::InequalityViolated, os.str());
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (tr.v[i] == 0.0) {
      res.sign_change_found = true;
      res.location = tr.t[i];
      break;
    }
    if (i + 1 < m && tr.v[i] * tr.v[i + 1] < 0.0) {
      res.sign_change_found = true;
      const double w = tr.v[i] / (tr.v[i] - tr.v[i + 1]);
      res.location = tr.t[i] + w * (tr.t[i + 1] - tr.t[i]);
      break;
    }
  }
  res.contradiction = res.sign_change_found && res.verdict.holds == criteria::Holds::Guaranteed;
  return res;
}

}  // namespace curvlab
