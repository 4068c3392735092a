#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "curvlab/errors.hpp"
#include "curvlab/momentum.hpp"

namespace curvlab {

namespace odeint = boost::numeric::odeint;

MomentumResult momentum_integrate(const CurvatureField& f, double u0, double p0, const Grid& grid, double p_tol) {
  if (!(std::abs(p0) < 1.0)) throw Error(ErrorCode::InvalidArgument, "initial momentum must satisfy |p0| < 1");
  if (!(p_tol > 0.0 && p_tol < 1.0)) throw Error(ErrorCode::InvalidArgument, "p_tol must lie in (0, 1)");
  if (!std::isfinite(u0)) throw Error(ErrorCode::InvalidArgument, "initial value must be finite");

  using State = std::array<double, 2>;
  const double threshold = 1.0 - p_tol;
  auto rhs = [&f](const State& y, State& dy, double x) {
    const double q = std::max(1.0 - y[1] * y[1], 1e-300);
    dy[0] = y[1] / std::sqrt(q);
    dy[1] = -f(x, y[0]);
  };

  const std::size_t n = grid.cells();
  const double a = grid.a();
  const double b = grid.b();
  const double h = grid.h();
  std::vector<double> u(n + 1, u0);
  std::vector<double> p(n, 0.0);
  MomentumResult out{GridFunction::constant(grid, 0.0), MomentumField{grid, {}}, 0, std::nullopt};

  auto stepper = odeint::make_dense_output(1e-12, 1e-12, odeint::runge_kutta_dopri5<State>());
  State y{u0, p0};
  std::size_t next_node = 1;
  std::size_t next_cell = 0;
  if (std::abs(p0) >= threshold) {
    out.event = MomentumEvent{a, p0 > 0 ? 1 : -1, u0, false};
  } else {
    stepper.initialize(y, a, h / 4.0);
    State s{};
    while (next_node <= n) {
      const double t = stepper.current_time();
      if (t + stepper.current_time_step() > b) stepper.initialize(stepper.current_state(), t, b - t);
      const auto [t0, t1] = stepper.do_step(rhs);
      const State end = stepper.current_state();
      const bool at_end = t1 >= b - 1e-12 * (b - a);
      double t_stop = at_end ? b : t1;
      if (std::abs(end[1]) >= threshold) {
        double lo = t0;
        double hi = t1;
        for (int k = 0; k < 200 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++k) {
          const double mid = 0.5 * (lo + hi);
          stepper.calc_state(mid, s);
          (std::abs(s[1]) >= threshold ? hi : lo) = mid;
        }
        stepper.calc_state(hi, s);
        out.event = MomentumEvent{hi, s[1] > 0 ? 1 : -1, s[0], false};
        t_stop = hi;
      } else if (t1 - t0 < 1e-14 * (b - a) && !at_end) {
        out.event = MomentumEvent{t1, end[1] > 0 ? 1 : -1, end[0], true};
      }
      while (next_node <= n && grid.x(next_node) <= t_stop) {
        stepper.calc_state(grid.x(next_node), s);
        u[next_node++] = s[0];
      }
      while (next_cell < n && grid.x(next_cell) + 0.5 * h <= t_stop) {
        stepper.calc_state(grid.x(next_cell) + 0.5 * h, s);
        p[next_cell++] = s[1];
      }
      if (out.event || at_end) break;
    }
  }
  out.last_node = next_node - 1;
  const double u_end = out.event ? out.event->u : u[out.last_node];
  const double p_end = out.event ? static_cast<double>(out.event->sign) : 0.0;
  for (std::size_t i = next_node; i <= n; ++i) u[i] = u_end;
  for (std::size_t i = next_cell; i < n; ++i) p[i] = p_end;
  out.u = GridFunction::from_nodal(grid, std::move(u));
  out.p = MomentumField{grid, std::move(p)};
  return out;
}

}  // namespace curvlab
