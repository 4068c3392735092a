#include "curvlab/sign_profile.hpp"

#include <algorithm>
#include <cmath>

#include "curvlab/errors.hpp"

namespace curvlab {

const char* to_string(Sign s) {
  switch (s) {
    case Sign::Negative: return "-";
    case Sign::Zero: return "0";
    case Sign::Positive: return "+";
  }
  return "?";
}

namespace {

struct Run {
  std::size_t first;
  std::size_t last;
  Sign sign;
};

}  // namespace

SignProfile sign_profile_of_samples(const Grid& grid, std::span<const double> g, double tol) {
  if (g.size() != grid.nodes()) throw Error(ErrorCode::InvalidArgument, "one sample per node required");
  if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "sign tolerance must be >= 0");

  std::vector<Run> runs;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Sign s = g[i] > tol ? Sign::Positive : (g[i] < -tol ? Sign::Negative : Sign::Zero);
    if (!runs.empty() && runs.back().sign == s) {
      runs.back().last = i;
    } else {
      runs.push_back({i, i, s});
    }
  }

  SignProfile out;
  const bool all_zero = std::all_of(runs.begin(), runs.end(), [](const Run& r) { return r.sign == Sign::Zero; });
  if (all_zero) {
    out.intervals.push_back({grid.a(), grid.b(), Sign::Zero});
    return out;
  }

  // Boundaries between consecutive signed runs, after absorbing zero runs.
  struct Signed {
    Sign sign;
    double lo;
  };
  std::vector<Signed> pieces;
  std::size_t k = 0;
  // Leading zero run joins the first signed run.
  if (runs[k].sign == Sign::Zero) ++k;
  pieces.push_back({runs[k].sign, grid.a()});
  std::size_t prev_last = runs[k].last;
  ++k;
  while (k < runs.size()) {
    if (runs[k].sign == Sign::Zero) {
      if (k + 1 >= runs.size()) break;  // trailing zero run
      const Run& zero = runs[k];
      const Run& next = runs[k + 1];
      if (next.sign != pieces.back().sign) {
        const double cp = 0.5 * (grid.x(zero.first) + grid.x(zero.last));
        pieces.push_back({next.sign, cp});
      }
      prev_last = next.last;
      k += 2;
      continue;
    }
    // Direct flip between nodes prev_last and runs[k].first.
    const std::size_t i = prev_last;
    const double gi = g[i];
    const double gj = g[i + 1];
    const double cp = grid.x(i) + grid.h() * gi / (gi - gj);
    pieces.push_back({runs[k].sign, cp});
    prev_last = runs[k].last;
    ++k;
  }

  for (std::size_t p = 0; p < pieces.size(); ++p) {
    const double hi = p + 1 < pieces.size() ? pieces[p + 1].lo : grid.b();
    out.intervals.push_back({pieces[p].lo, hi, pieces[p].sign});
    if (p > 0) out.change_points.push_back(pieces[p].lo);
  }
  return out;
}

std::vector<double> sample_load(const CurvatureField& f, const GridFunction& u) {
  const auto values = u.nodal();
  std::vector<double> g(values.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = f(u.grid().x(i), values[i]);
  return g;
}

SignProfile sign_profile(const CurvatureField& f, const GridFunction& u, double tol) {
  const auto g = sample_load(f, u);
  if (tol < 0.0) {
    double peak = 0.0;
    for (double v : g) peak = std::max(peak, std::abs(v));
    tol = 1e-12 * peak;
  }
  return sign_profile_of_samples(u.grid(), g, tol);
}

}  // namespace curvlab
