#include "curvlab/weak_form.hpp"

#include <cmath>

#include "curvlab/errors.hpp"

namespace curvlab {

WeakFormReport verify_weak_form(const GridFunction& u, const CurvatureField& f, const BoundaryCondition& bc,
                                double tol, double p_tol) {
  if (!(tol > 0.0) || !(p_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
  const Grid& g = u.grid();
  const std::size_t n = g.cells();
  const double h = g.h();
  const std::vector<double> v = u.nodal();
  const std::vector<double> p = u.momentum();
  std::vector<double> load(n + 1);
  for (std::size_t i = 0; i <= n; ++i) load[i] = f(g.x(i), v[i]);

  WeakFormReport rep;
  for (std::size_t i = 1; i < n; ++i) rep.hat_residuals.push_back(p[i - 1] - p[i] - h * load[i]);

  // Boundary hats carry half the load and the flux data of the condition.
  const double left = -p[0] - 0.5 * h * load[0];
  const double right = p[n - 1] - 0.5 * h * load[n];
  if (const auto* d = bc.get_if<Dirichlet>()) {
    if (std::abs(v[0] - d->k0) > tol) rep.hat_residuals.push_back(left + (v[0] > d->k0 ? 1.0 : -1.0));
    if (std::abs(v[n] - d->k1) > tol) rep.hat_residuals.push_back(right + (v[n] > d->k1 ? 1.0 : -1.0));
  } else if (const auto* nm = bc.get_if<Neumann>()) {
    rep.hat_residuals.push_back(left + nm->k0);
    rep.hat_residuals.push_back(right - nm->k1);
  } else if (const auto* r = bc.get_if<Robin>()) {
    rep.hat_residuals.push_back(left + r->k0 - r->l0 * v[0]);
    rep.hat_residuals.push_back(right + r->l1 * v[n] - r->k1);
  } else {
    const double seam = psi((v[0] - v[n]) / h);
    rep.hat_residuals.push_back(left + seam);
    rep.hat_residuals.push_back(right - seam);
  }
  for (double r : rep.hat_residuals) rep.max_hat_residual = std::max(rep.max_hat_residual, std::abs(r));
  rep.hat_pass = rep.max_hat_residual <= tol;

  rep.atoms_pass = true;
  for (const Jump& j : u.jumps()) {
    AtomCheck a;
    a.node = j.node;
    a.height = j.height;
    const double s = j.height > 0.0 ? 1.0 : (j.height < 0.0 ? -1.0 : 0.0);
    a.singular_residual = p[j.first_cell] - s;
    for (std::size_t c = j.first_cell; c < j.first_cell + j.cells; ++c)
      a.flux_defect = std::max(a.flux_defect, std::abs(p[c] - s));
    a.admissible = s != 0.0 && a.flux_defect <= p_tol;
    rep.atoms_pass = rep.atoms_pass && a.admissible;
    rep.atoms.push_back(a);
  }
  rep.pass = rep.hat_pass && rep.atoms_pass;
  return rep;
}

}  // namespace curvlab
