#include "curvlab/boundary.hpp"

#include <cmath>

#include "curvlab/errors.hpp"

namespace curvlab {

BoundaryCondition::BoundaryCondition(Variant v) : v_(v) {
  if (const auto* d = std::get_if<Dirichlet>(&v_)) {
    if (!std::isfinite(d->k0) || !std::isfinite(d->k1))
      throw Error(ErrorCode::InvalidArgument, "Dirichlet data must be finite");
  } else if (const auto* n = std::get_if<Neumann>(&v_)) {
    if (!(std::abs(n->k0) <= 1.0) || !(std::abs(n->k1) <= 1.0))
      throw Error(ErrorCode::InvalidArgument, "Neumann flux data must lie in [-1, 1]");
  } else if (const auto* r = std::get_if<Robin>(&v_)) {
    if (!std::isfinite(r->l0) || !std::isfinite(r->l1) || r->l0 == 0.0 || r->l1 == 0.0)
      throw Error(ErrorCode::InvalidArgument, "Robin multipliers must be finite and nonzero");
    if (!std::isfinite(r->k0) || !std::isfinite(r->k1))
      throw Error(ErrorCode::InvalidArgument, "Robin data must be finite");
  }
}

std::string BoundaryCondition::name() const {
  switch (v_.index()) {
    case 0: return "dirichlet";
    case 1: return "neumann";
    case 2: return "robin";
    default: return "periodic";
  }
}

BoundaryCondition BoundaryCondition::negated() const {
  if (const auto* d = std::get_if<Dirichlet>(&v_)) return Dirichlet{-d->k0, -d->k1};
  if (const auto* n = std::get_if<Neumann>(&v_)) return Neumann{-n->k0, -n->k1};
  if (const auto* r = std::get_if<Robin>(&v_)) return Robin{r->l0, -r->k0, r->l1, -r->k1};
  return Periodic{};
}

}  // namespace curvlab
