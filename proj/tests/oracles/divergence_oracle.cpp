#include "divergence_oracle.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <deque>
#include <limits>

namespace oracle {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Divergent: return "divergent";
    case Verdict::Convergent: return "convergent";
    default: return "undecided";
  }
}

namespace {

// coef * e^y without the 0 * inf of the borderline exponent.
double linear_term(double coef, double y) {
  if (coef == 0.0) return 0.0;
  return coef * std::exp(std::min(y, 700.0));
}

}  // namespace

Trace decide(const std::function<double(double)>& log_g, double y_max) {
  using boost::math::quadrature::gauss_kronrod;
  Trace tr;
  std::deque<double> window;
  double window_sum = 0.0;
  for (double y = 0.0; y < y_max; y += 1.0) {
    bool overflow = false;
    auto g = [&](double t) {
      const double lg = log_g(t);
      if (lg > 700.0) overflow = true;
      return std::exp(std::min(lg, 700.0));
    };
    const double inc = gauss_kronrod<double, 31>::integrate(g, y, y + 1.0, 8, 1e-12);
    tr.y_reached = y + 1.0;
    if (overflow || !std::isfinite(inc)) {
      tr.verdict = Verdict::Divergent;
      return tr;
    }
    if (y == 0.0) tr.reference = inc;
    tr.partial += inc;
    window.push_back(inc);
    window_sum += inc;
    if (window.size() > 10) {
      window_sum -= window.front();
      window.pop_front();
    }
    tr.last_increments = window_sum;
    if (tr.partial > 1e3 * tr.reference) {
      tr.verdict = Verdict::Divergent;
      return tr;
    }
    if (window.size() == 10 && window_sum < 1e-6 * std::max(1.0, tr.partial)) {
      tr.verdict = Verdict::Convergent;
      return tr;
    }
  }
  return tr;
}

Trace sqrt_antiderivative(double alpha, double beta, double C) {
  // With d = e^{-T}: M = e^{-(alpha+1)T} T^beta K(T),
  // K(T) = C int_0^inf e^{-(alpha+1)u} (1 + u/T)^beta du.
  auto log_g = [=](double y) {
    const double inv_T = std::exp(-y);
    boost::math::quadrature::exp_sinh<double> q;
    const double K = q.integrate([&](double u) { return C * std::exp(-(alpha + 1.0) * u + beta * std::log1p(u * inv_T)); });
    // integrand in y: d M^{-1/2} dT/dy with dd = -d dT, dT = T dy and log T = y
    return linear_term((alpha + 1.0) / 2.0 - 1.0, y) - 0.5 * (beta * y + std::log(K)) + y;
  };
  return decide(log_g);
}

Trace power_log(double gamma, double eta) {
  auto log_g = [=](double y) {
    return linear_term(gamma - 1.0, y) - eta * y + y;
  };
  return decide(log_g);
}

}  // namespace oracle
