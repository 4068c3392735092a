#pragma once

#include <functional>
#include <string>

namespace oracle {

enum class Verdict { Divergent, Convergent, Undecided };

std::string to_string(Verdict v);

struct Trace {
  Verdict verdict = Verdict::Undecided;
  /// Integral over the first unit of y (the reference cutoff).
  double reference = 0.0;
  double partial = 0.0;
  double last_increments = 0.0;
  double y_reached = 0.0;
};

/// Decides divergence of int_0 exp(log_g(y)) dy over y in [0, y_max], where the
/// original integral near d = 0 is rewritten with d = exp(-exp(y)). Divergent when the
/// partial integral exceeds 1e3 times the reference or the integrand overflows;
/// convergent when ten consecutive unit increments sum below 1e-6 (relative to
/// max(1, partial)).
Trace decide(const std::function<double(double)>& log_g, double y_max = 2000.0);

/// int_0 M(d)^(-1/2) dd with M(d) = int_0^d C t^alpha |log t|^beta dt, M evaluated by
/// quadrature rather than its leading-order form.
Trace sqrt_antiderivative(double alpha, double beta, double C = 1.0);

/// int_0 d^(-gamma) |log d|^(-eta) dd by quadrature.
Trace power_log(double gamma, double eta);

}  // namespace oracle
