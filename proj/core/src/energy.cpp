#include "curvlab/energy.hpp"

#include <cmath>

#include "curvlab/errors.hpp"

namespace curvlab {

void validate(const SolveParams& p) {
  if (p.outer_max < 1 || p.inner_max < 1) throw Error(ErrorCode::InvalidArgument, "iteration limits must be >= 1");
  if (!(p.outer_tol > 0.0) || !(p.inner_tol > 0.0) || !(p.p_tol > 0.0) || !(p.p_tol < 1.0))
    throw Error(ErrorCode::InvalidArgument, "tolerances must be positive (p_tol < 1)");
  if (!(p.damping > 0.0 && p.damping <= 1.0)) throw Error(ErrorCode::InvalidArgument, "damping must lie in (0, 1]");
  if (!(p.s_min < p.s_max)) throw Error(ErrorCode::InvalidArgument, "s_range must satisfy s_min < s_max");
}

namespace {

// sqrt(h^2 + d^2) - h without cancellation.
double link_excess(double h, double d) { return d * d / (std::sqrt(h * h + d * d) + h); }

double flux(double h, double d) { return d / std::hypot(h, d); }

// Neumaier compensated summation.
class Sum {
 public:
  void add(double x) {
    const double t = s_ + x;
    c_ += std::abs(s_) >= std::abs(x) ? (s_ - t) + x : (x - t) + s_;
    s_ = t;
  }
  [[nodiscard]] double value() const { return s_ + c_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

bool attained(double v, double k) { return std::abs(v - k) <= 1e-12 * (1.0 + std::abs(k)); }

}  // namespace

DiscreteEnergy::DiscreteEnergy(Grid grid, std::vector<double> load, BoundaryCondition bc)
    : grid_(grid), load_(std::move(load)), bc_(std::move(bc)) {
  if (load_.size() != grid_.nodes()) throw Error(ErrorCode::InvalidArgument, "load must have one value per node");
  for (double l : load_)
    if (!std::isfinite(l)) throw Error(ErrorCode::InvalidArgument, "load must be finite");
}

DiscreteEnergy DiscreteEnergy::with_prox(Prox prox) const {
  if (prox.center.size() != grid_.nodes() || prox.rho.size() != grid_.nodes())
    throw Error(ErrorCode::InvalidArgument, "prox arrays must have one value per node");
  DiscreteEnergy e = *this;
  e.prox_ = std::move(prox);
  return e;
}

double DiscreteEnergy::excess_value(std::span<const double> v) const {
  const std::size_t n = grid_.cells();
  const double h = grid_.h();
  Sum area;
  Sum work;
  for (std::size_t i = 0; i < n; ++i) area.add(link_excess(h, v[i + 1] - v[i]));
  for (std::size_t i = 0; i <= n; ++i) work.add(grid_.weight(i) * load_[i] * v[i]);
  double boundary = 0.0;
  if (const auto* d = bc_.get_if<Dirichlet>()) {
    boundary = std::abs(v[0] - d->k0) + std::abs(v[n] - d->k1);
  } else if (const auto* nm = bc_.get_if<Neumann>()) {
    boundary = nm->k0 * v[0] - nm->k1 * v[n];
  } else if (const auto* r = bc_.get_if<Robin>()) {
    boundary = r->k0 * v[0] - 0.5 * r->l0 * v[0] * v[0] + 0.5 * r->l1 * v[n] * v[n] - r->k1 * v[n];
  } else {
    boundary = link_excess(h, v[0] - v[n]);
  }
  Sum prox;
  if (prox_) {
    for (std::size_t i = 0; i <= n; ++i) {
      const double d = v[i] - prox_->center[i];
      prox.add(grid_.weight(i) * prox_->rho[i] * d * d);
    }
  }
  return area.value() + boundary - h * work.value() + 0.5 * h * prox.value();
}

double DiscreteEnergy::value(std::span<const double> v) const {
  return excess_value(v) + static_cast<double>(grid_.cells()) * grid_.h();
}

std::vector<double> DiscreteEnergy::smooth_gradient(std::span<const double> v) const {
  const std::size_t n = grid_.cells();
  const double h = grid_.h();
  std::vector<double> g(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = flux(h, v[i + 1] - v[i]);
    g[i] -= p;
    g[i + 1] += p;
  }
  for (std::size_t i = 0; i <= n; ++i) g[i] -= h * grid_.weight(i) * load_[i];
  if (const auto* nm = bc_.get_if<Neumann>()) {
    g[0] += nm->k0;
    g[n] -= nm->k1;
  } else if (const auto* r = bc_.get_if<Robin>()) {
    g[0] += r->k0 - r->l0 * v[0];
    g[n] += r->l1 * v[n] - r->k1;
  } else if (bc_.get_if<Periodic>()) {
    const double ps = flux(h, v[0] - v[n]);
    g[0] += ps;
    g[n] -= ps;
  }
  if (prox_) {
    for (std::size_t i = 0; i <= n; ++i) g[i] += h * grid_.weight(i) * prox_->rho[i] * (v[i] - prox_->center[i]);
  }
  return g;
}

double DiscreteEnergy::stationarity(std::span<const double> v) const {
  const std::size_t n = grid_.cells();
  const std::vector<double> g = smooth_gradient(v);
  double worst = 0.0;
  for (std::size_t i = 1; i < n; ++i) worst = std::max(worst, std::abs(g[i]) / (1.0 + std::abs(load_[i])));
  auto end_defect = [&](std::size_t i) {
    if (const auto* d = bc_.get_if<Dirichlet>()) {
      const double k = i == 0 ? d->k0 : d->k1;
      if (attained(v[i], k)) return std::max(0.0, std::abs(g[i]) - 1.0);
      return std::abs(g[i] + (v[i] > k ? 1.0 : -1.0));
    }
    return std::abs(g[i]) / (1.0 + std::abs(load_[i]));
  };
  worst = std::max(worst, end_defect(0));
  worst = std::max(worst, end_defect(n));
  return worst;
}

}  // namespace curvlab
