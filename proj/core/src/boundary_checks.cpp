#include "curvlab/boundary_checks.hpp"

#include <cmath>

#include "curvlab/classify.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/sign_profile.hpp"

namespace curvlab {

BoundaryReport boundary_attainment(const GridFunction& u, const CurvatureField& f, const BoundaryCondition& bc,
                                   double p_tol, double tol) {
  const auto v = u.nodal();
  const std::size_t n = u.grid().cells();
  const auto [fa, fb] = boundary_fluxes(u, f);
  BoundaryReport rep;
  rep.condition = bc.name();
  rep.left.trace = v[0];
  rep.right.trace = v[n];
  rep.left.flux = fa;
  rep.right.flux = fb;
  rep.left.saturated = std::abs(fa) >= 1.0 - p_tol;
  rep.right.saturated = std::abs(fb) >= 1.0 - p_tol;
  if (const auto* d = bc.get_if<Dirichlet>()) {
    rep.left.gap = std::abs(v[0] - d->k0);
    rep.right.gap = std::abs(v[n] - d->k1);
    rep.left.attained = rep.left.gap <= tol;
    rep.right.attained = rep.right.gap <= tol;
  } else if (const auto* nm = bc.get_if<Neumann>()) {
    rep.left.residual = fa - nm->k0;
    rep.right.residual = fb - nm->k1;
  } else if (const auto* r = bc.get_if<Robin>()) {
    rep.left.residual = fa + r->l0 * v[0] - r->k0;
    rep.right.residual = fb + r->l1 * v[n] - r->k1;
  } else {
    rep.value_gap = std::abs(v[0] - v[n]);
    rep.flux_gap = std::abs(fa - fb);
  }
  return rep;
}

U2Report u2_integrability(const GridFunction& u, double p_tol) {
  if (!u.jumps().empty()) throw Error(ErrorCode::NotApplicable, "identity needs a jump-free solution");
  const Grid& g = u.grid();
  const std::size_t n = g.cells();
  if (n < 4) throw Error(ErrorCode::NotApplicable, "identity needs at least 4 cells");
  const double h = g.h();
  const auto v = u.nodal();
  const auto p = u.momentum();
  // boundary fluxes extrapolated linearly from the two end cells
  const double pa = 1.5 * p[0] - 0.5 * p[1];
  const double pb = 1.5 * p[n - 1] - 0.5 * p[n - 2];
  if (std::abs(pa) >= 1.0 - p_tol || std::abs(pb) >= 1.0 - p_tol)
    throw Error(ErrorCode::NotApplicable, "identity needs finite endpoint slopes");

  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = (v[i + 1] - v[i]) / h;
  // The curvature sign is opposite to the second difference.
  std::vector<double> curv(n + 1);
  double cmax = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    curv[i] = -(s[i] - s[i - 1]);
    cmax = std::max(cmax, std::abs(curv[i]));
  }
  curv[0] = curv[1];
  curv[n] = curv[n - 1];
  const SignProfile prof = sign_profile_of_samples(g, curv, 1e-8 * cmax);
  if (prof.change_points.size() > 1) throw Error(ErrorCode::NotApplicable, "identity needs at most one sign change");

  U2Report rep;
  if (prof.change_points.size() == 1) {
    rep.z = prof.change_points[0];
  } else {
    const Sign only = prof.intervals.empty() ? Sign::Zero : prof.intervals.front().sign;
    rep.z = only == Sign::Negative ? g.a() : g.b();
  }

  // Slopes at a, z and b come from the momentum, which is Lipschitz on each side of z
  // while u' may be very steep there.
  const double du_a = psi_inv(pa);
  const double du_b = psi_inv(pb);
  rep.lhs = std::abs(s[0] - du_a) + std::abs(du_b - s[n - 1]);
  const bool interior = rep.z > g.a() && rep.z < g.b();
  // cells kl and kl + 1 have midpoints on either side of z
  const double t = (rep.z - g.a()) / h - 0.5;
  const auto kl = interior && t >= 1.0 && t < static_cast<double>(n - 2) ? static_cast<std::size_t>(std::floor(t)) : n;
  double du_z = 0.0;
  if (!interior) {
    du_z = rep.z <= g.a() ? du_a : du_b;
  } else if (kl == n) {
    throw Error(ErrorCode::NotApplicable, "identity needs the sign change at least two cells from the ends");
  } else {
    const double dz_left = t - static_cast<double>(kl);
    const double dz_right = static_cast<double>(kl + 1) - t;
    const double from_left = p[kl] + (p[kl] - p[kl - 1]) * dz_left;
    const double from_right = p[kl + 1] + (p[kl + 1] - p[kl + 2]) * dz_right;
    const double pz = 0.5 * (from_left + from_right);
    if (std::abs(pz) >= 1.0 - p_tol) throw Error(ErrorCode::NotApplicable, "identity needs a finite slope at z");
    du_z = psi_inv(pz);
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (i == kl + 1) {
      rep.lhs += std::abs(du_z - s[kl]) + std::abs(s[kl + 1] - du_z);
    } else {
      rep.lhs += std::abs(s[i] - s[i - 1]);
    }
  }
  rep.rhs = std::abs(du_a - 2.0 * du_z + du_b);
  rep.gap = std::abs(rep.lhs - rep.rhs);
  return rep;
}

double circle_arc(double lambda, double x) {
  if (!(lambda > 0.0 && lambda <= 2.0)) throw Error(ErrorCode::InvalidArgument, "circle arc needs 0 < lambda <= 2");
  const double r = 1.0 / lambda;
  const double dx = x - 0.5;
  return std::sqrt(std::max(0.0, r * r - dx * dx)) - std::sqrt(std::max(0.0, r * r - 0.25));
}

double circle_arc_slope(double lambda, double x) {
  if (!(lambda > 0.0 && lambda <= 2.0)) throw Error(ErrorCode::InvalidArgument, "circle arc needs 0 < lambda <= 2");
  const double r = 1.0 / lambda;
  const double dx = x - 0.5;
  return -dx / std::sqrt(r * r - dx * dx);
}

}  // namespace curvlab
