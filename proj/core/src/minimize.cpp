#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>

#include "curvlab/solve.hpp"

namespace curvlab {

namespace {

constexpr double kBox = 1e6;
constexpr double kRelaxedDefect = 1e-9;

struct End {
  bool dirichlet = false;
  bool pinned = false;
  double sigma = 0.0;
  double k = 0.0;
};

double curvature(double h, double d) {
  const double r = std::hypot(h, d);
  return h * h / (r * r * r);
}

class Newton {
 public:
  Newton(const DiscreteEnergy& e, std::vector<double> v) : e_(&e), v_(std::move(v)) {
    const std::size_t n = e_->grid().cells();
    if (const auto* d = e_->bc().get_if<Dirichlet>()) {
      init_end(ends_[0], v_[0], d->k0);
      init_end(ends_[1], v_[n], d->k1);
    }
  }

  [[nodiscard]] const std::vector<double>& v() const { return v_; }

  // Total gradient with pinned ends zeroed; releases pinned ends whose subgradient
  // left [-1, 1]. Returns the defect.
  double gradient(std::vector<double>& gt) {
    const std::size_t n = e_->grid().cells();
    gt = e_->smooth_gradient(v_);
    const auto load = e_->load();
    double defect = 0.0;
    for (std::size_t side = 0; side < 2; ++side) {
      End& end = ends_[side];
      const std::size_t i = side == 0 ? 0 : n;
      if (!end.dirichlet) continue;
      if (end.pinned && std::abs(gt[i]) > 1.0) {
        end.pinned = false;
        end.sigma = gt[i] > 0.0 ? -1.0 : 1.0;
      }
      if (end.pinned) {
        defect = std::max(defect, std::max(0.0, std::abs(gt[i]) - 1.0));
        gt[i] = 0.0;
      } else {
        gt[i] += end.sigma;
      }
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (is_pinned(i)) continue;
      defect = std::max(defect, std::abs(gt[i]) / (1.0 + std::abs(load[i])));
    }
    return defect;
  }

  // Solves (H + mu I) d = -gt over the free variables. Returns false on failure.
  bool direction(const std::vector<double>& gt, double mu, std::vector<double>& d) {
    const std::size_t n = e_->grid().cells();
    const double h = e_->grid().h();
    std::vector<int> index(n + 1, -1);
    int m = 0;
    for (std::size_t i = 0; i <= n; ++i)
      if (!is_pinned(i)) index[i] = m++;
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(4 * (n + 2));
    auto link = [&](std::size_t i, std::size_t j, double k) {
      const int a = index[i];
      const int b = index[j];
      if (a >= 0) t.emplace_back(a, a, k);
      if (b >= 0) t.emplace_back(b, b, k);
      if (a >= 0 && b >= 0) {
        t.emplace_back(a, b, -k);
        t.emplace_back(b, a, -k);
      }
    };
    for (std::size_t i = 0; i < n; ++i) link(i, i + 1, curvature(h, v_[i + 1] - v_[i]));
    if (e_->bc().get_if<Periodic>()) link(0, n, curvature(h, v_[0] - v_[n]));
    if (const auto* r = e_->bc().get_if<Robin>()) {
      t.emplace_back(index[0], index[0], -r->l0);
      t.emplace_back(index[n], index[n], r->l1);
    }
    if (const auto& prox = e_->prox()) {
      for (std::size_t i = 0; i <= n; ++i)
        if (index[i] >= 0) t.emplace_back(index[i], index[i], h * e_->grid().weight(i) * prox->rho[i]);
    }
    for (int i = 0; i < m; ++i) t.emplace_back(i, i, mu);
    Eigen::SparseMatrix<double> H(m, m);
    H.setFromTriplets(t.begin(), t.end());
    Eigen::VectorXd rhs(m);
    for (std::size_t i = 0; i <= n; ++i)
      if (index[i] >= 0) rhs[index[i]] = -gt[i];
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(H);
    if (ldlt.info() != Eigen::Success) return false;
    if ((ldlt.vectorD().array() <= 0.0).any()) return false;
    const Eigen::VectorXd x = ldlt.solve(rhs);
    if (ldlt.info() != Eigen::Success || !x.allFinite()) return false;
    d.assign(n + 1, 0.0);
    for (std::size_t i = 0; i <= n; ++i)
      if (index[i] >= 0) d[i] = x[index[i]];
    return true;
  }

  // Largest step in (0, 1] keeping free Dirichlet ends on their side of the datum.
  double max_step(const std::vector<double>& d, int& hit) const {
    const std::size_t n = e_->grid().cells();
    double t = 1.0;
    hit = -1;
    for (int side = 0; side < 2; ++side) {
      const End& end = ends_[side];
      const std::size_t i = side == 0 ? 0 : n;
      if (!end.dirichlet || end.pinned || d[i] == 0.0) continue;
      if (end.sigma * (v_[i] + d[i] - end.k) < 0.0) {
        const double ti = (end.k - v_[i]) / d[i];
        if (ti < t) {
          t = ti;
          hit = side;
        }
      }
    }
    return t;
  }

  std::vector<double> trial(const std::vector<double>& d, double t) const {
    std::vector<double> w(v_.size());
    for (std::size_t i = 0; i < v_.size(); ++i) w[i] = v_[i] + t * d[i];
    return w;
  }

  void accept(std::vector<double> w, int pin_side) {
    v_ = std::move(w);
    if (pin_side >= 0) {
      End& end = ends_[pin_side];
      v_[pin_side == 0 ? 0 : v_.size() - 1] = end.k;
      end.pinned = true;
      end.sigma = 0.0;
    }
  }

 private:
  static void init_end(End& end, double& v, double k) {
    end.dirichlet = true;
    end.k = k;
    end.pinned = v == k;
    end.sigma = v > k ? 1.0 : (v < k ? -1.0 : 0.0);
  }

  bool is_pinned(std::size_t i) const {
    const std::size_t n = e_->grid().cells();
    if (i == 0) return ends_[0].dirichlet && ends_[0].pinned;
    if (i == n) return ends_[1].dirichlet && ends_[1].pinned;
    return false;
  }

  const DiscreteEnergy* e_;
  std::vector<double> v_;
  End ends_[2];
};

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

MinimizeResult minimize_energy(const DiscreteEnergy& e, const GridFunction& v0, const SolveParams& params) {
  validate(params);
  if (!(v0.grid() == e.grid())) throw Error(ErrorCode::InvalidArgument, "initial guess lives on a different grid");
  Newton nt(e, v0.nodal());
  MinimizeReport rep;
  double energy = e.excess_value(nt.v());
  rep.initial_energy = energy;
  rep.energies.push_back(energy);
  const double mu_floor = 1e-12;
  double mu = mu_floor;
  std::vector<double> gt;
  std::vector<double> d;
  double defect = nt.gradient(gt);
  int it = 0;
  int stagnant = 0;
  for (; it < params.inner_max; ++it) {
    // Flux differences carry rounding of order eps |v| / h; no step resolves below it.
    const double floor = 16.0 * std::numeric_limits<double>::epsilon() * (1.0 + sup_norm(nt.v())) / e.grid().h();
    if (defect <= params.inner_tol) break;
    if (defect <= floor) {
      rep.rounding_limited = true;
      break;
    }
    if (stagnant >= 50 && defect <= kRelaxedDefect) {
      rep.rounding_limited = true;
      break;
    }
    bool ok = false;
    while (mu < 1e20) {
      if (nt.direction(gt, mu, d)) {
        double slope = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) slope += gt[i] * d[i];
        if (slope < 0.0) {
          ok = true;
          break;
        }
      }
      mu = std::max(mu * 10.0, 1e-8);
    }
    if (!ok) {
      d.resize(gt.size());
      for (std::size_t i = 0; i < gt.size(); ++i) d[i] = -gt[i];
    }
    double slope = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) slope += gt[i] * d[i];
    int hit = -1;
    const double t_max = nt.max_step(d, hit);
    double t = t_max;
    bool accepted = false;
    for (int k = 0; k < 60; ++k) {
      std::vector<double> w = nt.trial(d, t);
      const double ew = e.excess_value(w);
      if (ew < energy && ew <= energy + 1e-4 * t * slope) {
        nt.accept(std::move(w), t == t_max ? hit : -1);
        energy = e.excess_value(nt.v());
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      // Armijo cannot resolve the decrease below rounding: take the full step when it
      // keeps the energy within rounding and lowers the defect.
      std::vector<double> w = nt.trial(d, t_max);
      const double ew = e.excess_value(w);
      Newton probe = nt;
      probe.accept(w, hit);
      std::vector<double> gp;
      const double dp = probe.gradient(gp);
      if (ew <= energy + 1e-14 * (1.0 + std::abs(energy)) && dp < defect) {
        nt = std::move(probe);
        energy = e.excess_value(nt.v());
        accepted = true;
      }
    }
    if (!accepted) {
      if (defect <= kRelaxedDefect) {
        rep.rounding_limited = true;
        break;
      }
      if (mu >= 1e20) throw Error(ErrorCode::MaxIterations, "inner descent stalled with defect " + std::to_string(defect));
      mu = std::max(mu * 10.0, 1e-8);
      continue;
    }
    rep.energies.push_back(energy);
    mu = std::max(mu * 0.1, mu_floor);
    if (sup_norm(nt.v()) > kBox)
      throw Error(ErrorCode::UnboundedBelow, "iterates exceed 1e6 in sup-norm: the discrete energy is unbounded below");
    const double before = defect;
    defect = nt.gradient(gt);
    stagnant = defect > 0.99 * before ? stagnant + 1 : 0;
  }
  if (it >= params.inner_max && defect > params.inner_tol) {
    if (defect > kRelaxedDefect)
      throw Error(ErrorCode::MaxIterations, "inner descent hit inner_max with defect " + std::to_string(defect) + " (" + std::to_string(std::log10(defect)) + " decades)");
    rep.rounding_limited = true;
  }
  rep.iterations = it;
  rep.final_energy = energy;
  rep.stationarity = defect;
  MinimizeResult res{GridFunction::from_nodal(e.grid(), nt.v()), std::move(rep)};
  return res;
}

}  // namespace curvlab
