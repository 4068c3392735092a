#include <algorithm>
#include <cmath>
#include <sstream>

#include "curvlab/solve.hpp"

namespace curvlab {

OuterNoConvergence::OuterNoConvergence(const std::string& message, std::vector<double> last,
                                       std::vector<double> previous, std::vector<TraceRow> trace)
    : Error(ErrorCode::OuterNoConvergence, message),
      last_(std::move(last)),
      previous_(std::move(previous)),
      trace_(std::move(trace)) {}

std::vector<double> state_lipschitz(const CurvatureField& f, const Grid& grid, std::span<const double> u) {
  std::vector<double> rho(grid.nodes());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double x = grid.x(i);
    const double ds = 1e-6 * (1.0 + std::abs(u[i]));
    rho[i] = std::abs(f(x, u[i] + ds) - f(x, u[i] - ds)) / (2.0 * ds);
  }
  return rho;
}

namespace {

void check_range(std::span<const double> u, const SolveParams& p) {
  for (double s : u) {
    if (s < p.s_min || s > p.s_max) {
      std::ostringstream os;
      os.precision(17);
      os << "iterate value " << s << " leaves s_range [" << p.s_min << ", " << p.s_max << "]";
      throw Error(ErrorCode::RangeExceeded, os.str());
    }
  }
}

std::vector<double> sample(const CurvatureField& f, const Grid& grid, std::span<const double> u) {
  std::vector<double> load(grid.nodes());
  for (std::size_t i = 0; i < load.size(); ++i) load[i] = f(grid.x(i), u[i]);
  return load;
}

}  // namespace

SolveResult solve(const CurvatureField& f, const BoundaryCondition& bc, const Grid& grid, const SolveParams& params,
                  const std::optional<GridFunction>& initial) {
  validate(params);
  GridFunction start = initial ? *initial : GridFunction::constant(grid, 0.0);
  if (!(start.grid() == grid)) throw Error(ErrorCode::InvalidArgument, "initial guess lives on a different grid");
  std::vector<double> u = start.nodal();
  check_range(u, params);

  SolveResult out{GridFunction::constant(grid, 0.0), false, 0, 0.0, 0.0, {}};
  if (!f.depends_on_state()) {
    DiscreteEnergy e(grid, sample(f, grid, u), bc);
    MinimizeResult m = minimize_energy(e, start, params);
    std::vector<double> v = m.v.nodal();
    check_range(v, params);
    double change = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) change = std::max(change, std::abs(v[i] - u[i]));
    out.trace.push_back({1, e.value(v), change, m.report.iterations});
    out.u = std::move(m.v);
    out.converged = true;
    out.outer_iterations = 1;
    out.last_change = change;
    out.stationarity = m.report.stationarity;
    return out;
  }

  std::vector<double> previous = u;
  for (int k = 1; k <= params.outer_max; ++k) {
    DiscreteEnergy e = DiscreteEnergy(grid, sample(f, grid, u), bc).with_prox(Prox{u, state_lipschitz(f, grid, u)});
    MinimizeResult m = minimize_energy(e, GridFunction::from_nodal(grid, u), params);
    const std::vector<double> v = m.v.nodal();
    std::vector<double> next(u.size());
    double change = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      next[i] = u[i] + params.damping * (v[i] - u[i]);
      change = std::max(change, std::abs(next[i] - u[i]));
    }
    check_range(next, params);
    out.trace.push_back({k, e.value(v), change, m.report.iterations});
    previous = std::move(u);
    u = std::move(next);
    out.outer_iterations = k;
    out.last_change = change;
    out.stationarity = m.report.stationarity;
    if (change < params.outer_tol) {
      out.converged = true;
      out.u = GridFunction::from_nodal(grid, u);
      return out;
    }
  }
  std::ostringstream os;
  os << "outer fixed point did not settle within " << params.outer_max << " sweeps (last sup change "
     << out.last_change << ")";
  throw OuterNoConvergence(os.str(), u, previous, out.trace);
}

}  // namespace curvlab
