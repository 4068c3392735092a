#include "curvlab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "curvlab/errors.hpp"

namespace curvlab {

const char* to_string(Shape s) {
  switch (s) {
    case Shape::Concave: return "concave";
    case Shape::Convex: return "convex";
    case Shape::Affine: return "affine";
  }
  return "?";
}

const char* to_string(SlopeStatus s) {
  switch (s) {
    case SlopeStatus::Finite: return "finite";
    case SlopeStatus::PlusInfinity: return "plus_infinity";
    case SlopeStatus::MinusInfinity: return "minus_infinity";
  }
  return "?";
}

const char* to_string(TaxonomyCase c) {
  switch (c) {
    case TaxonomyCase::I: return "i";
    case TaxonomyCase::II: return "ii";
    case TaxonomyCase::III: return "iii";
    case TaxonomyCase::IIII: return "iiii";
    case TaxonomyCase::Composite: return "composite";
  }
  return "?";
}

std::pair<double, double> boundary_fluxes(const GridFunction& u, const CurvatureField& f) {
  const Grid& g = u.grid();
  const auto v = u.nodal();
  const auto p = u.momentum();
  const std::size_t n = g.cells();
  const double h = g.h();
  return {p[0] + 0.5 * h * f(g.a(), v[0]), p[n - 1] - 0.5 * h * f(g.b(), v[n])};
}

namespace {

using criteria::Bound;
using criteria::EndpointCase;
using criteria::Envelope;
using criteria::InteriorCase;
using criteria::Side;

EndpointStatus endpoint(double flux, double p_tol) {
  EndpointStatus s;
  s.flux = flux;
  if (std::abs(flux) >= 1.0 - p_tol) {
    s.status = flux > 0.0 ? SlopeStatus::PlusInfinity : SlopeStatus::MinusInfinity;
    s.slope = flux > 0.0 ? HUGE_VAL : -HUGE_VAL;
  } else {
    s.slope = psi_inv(flux);
  }
  return s;
}

Sign sign_left_of(const SignProfile& prof, double c) {
  for (const auto& iv : prof.intervals)
    if (iv.hi == c) return iv.sign;
  return Sign::Zero;
}

Sign sign_right_of(const SignProfile& prof, double c) {
  for (const auto& iv : prof.intervals)
    if (iv.lo == c) return iv.sign;
  return Sign::Zero;
}

AttachedCriterion endpoint_criterion(EndpointCase which, Envelope env) {
  AttachedCriterion a;
  a.label = criteria::to_string(which);
  a.point = env.point;
  a.verdict = criteria::endpoint_regularity(which, env);
  return a;
}

AttachedCriterion interior_criterion(InteriorCase which, Envelope env, double lo, double hi) {
  AttachedCriterion a;
  a.label = std::string(criteria::to_string(which)) + "/" + criteria::to_string(env.side);
  a.point = env.point;
  a.verdict = criteria::interior_regularity(which, env, lo, hi);
  return a;
}

// Power-law envelopes of a load value v near the left end (value at the end) and right end.
void constant_end_criteria(std::vector<AttachedCriterion>& out, double value, double point, bool at_a,
                           double delta) {
  if (value == 0.0) return;
  Envelope env;
  env.point = point;
  env.side = at_a ? Side::Right : Side::Left;
  env.C = std::abs(value);
  env.alpha = 0.0;
  env.delta = delta;
  env.bound = value > 0.0 ? Bound::UpperMu : Bound::LowerNu;
  EndpointCase which = at_a ? (value > 0.0 ? EndpointCase::J : EndpointCase::JJJ)
                            : (value > 0.0 ? EndpointCase::JJ : EndpointCase::JJJJ);
  out.push_back(endpoint_criterion(which, env));
}

void interior_pair(std::vector<AttachedCriterion>& out, double z, double left_c, double right_c, double alpha,
                   bool plus_to_minus, double lo, double hi, double delta) {
  const InteriorCase which = plus_to_minus ? InteriorCase::H : InteriorCase::HH;
  Envelope l;
  l.point = z;
  l.side = Side::Left;
  l.C = left_c;
  l.alpha = alpha;
  l.delta = delta;
  l.bound = plus_to_minus ? Bound::UpperMu : Bound::LowerNu;
  Envelope r = l;
  r.side = Side::Right;
  r.C = right_c;
  r.bound = plus_to_minus ? Bound::LowerNu : Bound::UpperMu;
  out.push_back(interior_criterion(which, l, lo, hi));
  out.push_back(interior_criterion(which, r, lo, hi));
}

double safe_delta(double d) { return std::clamp(d, 1e-6, 0.5); }

AttachedCriterion heuristic_side(const std::string& label, double point, std::vector<double> d,
                                 std::vector<double> mu) {
  AttachedCriterion a;
  a.label = label;
  a.point = point;
  a.verdict = criteria::heuristic_sqrt_divergence(d, mu);
  return a;
}

}  // namespace

std::vector<AttachedCriterion> attached_criteria(const CurvatureField& f, const GridFunction& u,
                                                 const SignProfile& profile) {
  const Grid& g = u.grid();
  const double a = g.a();
  const double b = g.b();
  std::vector<AttachedCriterion> out;
  const auto& spec = f.spec();
  if (const auto* c = std::get_if<ConstantLoad>(&spec)) {
    constant_end_criteria(out, c->value, a, true, safe_delta(b - a));
    constant_end_criteria(out, c->value, b, false, safe_delta(b - a));
    return out;
  }
  if (const auto* s = std::get_if<StepLoad>(&spec)) {
    const bool inside = s->z > a && s->z < b;
    constant_end_criteria(out, inside ? s->left_value : (s->z >= b ? s->left_value : s->right_value), a, true,
                          safe_delta(inside ? s->z - a : b - a));
    constant_end_criteria(out, inside ? s->right_value : (s->z <= a ? s->right_value : s->left_value), b, false,
                          safe_delta(inside ? b - s->z : b - a));
    if (inside && s->left_value * s->right_value < 0.0)
      interior_pair(out, s->z, std::abs(s->left_value), std::abs(s->right_value), 0.0, s->left_value > 0.0, a, b,
                    safe_delta(std::min(s->z - a, b - s->z)));
    return out;
  }
  if (const auto* p = std::get_if<PowerSignLoad>(&spec)) {
    if (p->amplitude == 0.0) return out;
    const bool inside = p->z > a && p->z < b;
    // Near an end the load is bounded by its value there.
    const double at_a = f(a, 0.0);
    const double at_b = f(b, 0.0);
    constant_end_criteria(out, at_a, a, true, safe_delta(std::abs(p->z - a)));
    constant_end_criteria(out, at_b, b, false, safe_delta(std::abs(b - p->z)));
    if (inside)
      interior_pair(out, p->z, std::abs(p->amplitude), std::abs(p->amplitude), p->alpha, p->amplitude > 0.0, a, b,
                    safe_delta(std::min(p->z - a, b - p->z)));
    return out;
  }

  // No closed form: fit the sampled load near each change point and end.
  const auto v = u.nodal();
  const std::size_t n = g.cells();
  std::vector<double> load(n + 1);
  for (std::size_t i = 0; i <= n; ++i) load[i] = f(g.x(i), v[i]);
  auto side_samples = [&](double point, bool right, double span, std::vector<double>& d, std::vector<double>& mu) {
    for (std::size_t i = 0; i <= n; ++i) {
      const double dist = right ? g.x(i) - point : point - g.x(i);
      if (dist > 0.0 && dist <= span) {
        d.push_back(dist);
        mu.push_back(std::abs(load[i]));
      }
    }
    if (!right) {
      std::reverse(d.begin(), d.end());
      std::reverse(mu.begin(), mu.end());
    }
  };
  auto try_push = [&](const std::string& label, double point, bool right, double span) {
    std::vector<double> d;
    std::vector<double> mu;
    side_samples(point, right, span, d, mu);
    if (d.size() >= 8) out.push_back(heuristic_side(label, point, std::move(d), std::move(mu)));
  };
  if (!profile.intervals.empty()) {
    const Sign first = profile.intervals.front().sign;
    const Sign last = profile.intervals.back().sign;
    if (first != Sign::Zero)
      try_push(first == Sign::Positive ? "j" : "jjj", a, true, safe_delta(profile.intervals.front().hi - a));
    if (last != Sign::Zero)
      try_push(last == Sign::Positive ? "jj" : "jjjj", b, false, safe_delta(b - profile.intervals.back().lo));
  }
  for (double c : profile.change_points) {
    const bool plus_minus = sign_left_of(profile, c) == Sign::Positive;
    const std::string which = plus_minus ? "h" : "hh";
    try_push(which + "/left", c, false, safe_delta(c - a));
    try_push(which + "/right", c, true, safe_delta(b - c));
  }
  return out;
}

Classification classify_solution(const GridFunction& u_in, const CurvatureField& f, double p_tol) {
  if (!(p_tol > 0.0 && p_tol < 1.0)) throw Error(ErrorCode::InvalidArgument, "p_tol must lie in (0, 1)");
  const Grid& g = u_in.grid();
  const std::size_t n = g.cells();
  const double h = g.h();
  const double threshold = 1.0 - p_tol;

  RegularityReport rep;
  rep.sign_intervals = sign_profile(f, u_in);
  const SignProfile& prof = rep.sign_intervals;

  GridFunction u = u_in;
  std::vector<bool> atom_cell(n, false);
  for (const Jump& j : u.jumps())
    for (std::size_t c = j.first_cell; c < j.first_cell + j.cells; ++c) atom_cell[c] = true;

  for (double c : prof.change_points) {
    const auto p = u.momentum();
    const std::size_t k = g.cell_of(c);
    std::vector<std::size_t> cands;
    for (std::size_t cell = (k == 0 ? 0 : k - 1); cell <= std::min(k + 1, n - 1); ++cell)
      if (!atom_cell[cell] && std::abs(p[cell]) >= threshold) cands.push_back(cell);
    if (cands.empty()) continue;
    const std::size_t best =
        *std::max_element(cands.begin(), cands.end(), [&](auto l, auto r) { return std::abs(p[l]) < std::abs(p[r]); });
    std::size_t first = best;
    std::size_t cells = 1;
    std::size_t partner = best;
    for (std::size_t other : cands) {
      const bool adjacent = other + 1 == best || best + 1 == other;
      if (adjacent && p[other] * p[best] > 0.0 && (partner == best || std::abs(p[other]) > std::abs(p[partner])))
        partner = other;
    }
    if (partner != best) {
      first = std::min(best, partner);
      cells = 2;
    }
    std::size_t node = first + 1;
    if (cells == 1) {
      node = std::abs(g.x(first) - c) <= std::abs(g.x(first + 1) - c) ? first : first + 1;
      if (node == 0) node = 1;
      if (node == n) node = n - 1;
    }
    if (node == 0 || node >= n || (cells == 1 && node != first && node != first + 1)) continue;

    const auto v = u.nodal();
    JumpRecord rec;
    rec.node = node;
    rec.location = g.x(node);
    rec.u_left = v[first];
    rec.u_right = v[first + cells];
    rec.height = rec.u_right - rec.u_left;
    rec.direction = rec.height < 0.0 ? -1 : 1;
    rec.continuous_blowup = std::abs(rec.height) <= 10.0 * h;
    const Sign left = sign_left_of(prof, c);
    const Sign right = sign_right_of(prof, c);
    if (left == Sign::Positive && right == Sign::Negative && rec.direction > 0)
      throw Error(ErrorCode::ShapeViolation, "upward jump where the load turns from positive to negative");
    if (left == Sign::Negative && right == Sign::Positive && rec.direction < 0)
      throw Error(ErrorCode::ShapeViolation, "downward jump where the load turns from negative to positive");
    if (!rec.continuous_blowup) {
      u = u.atomize(first, cells, node);
      for (std::size_t cell = first; cell < first + cells; ++cell) atom_cell[cell] = true;
    }
    rep.jumps.push_back(rec);
  }

  const auto p = u.momentum();
  for (std::size_t cell = 1; cell + 1 < n; ++cell)
    if (!atom_cell[cell] && std::abs(p[cell]) >= threshold) ++rep.saturated_cells;

  const auto [fa, fb] = boundary_fluxes(u, f);
  rep.left = endpoint(fa, p_tol);
  rep.right = endpoint(fb, p_tol);

  const auto ac = u.ac_values();
  double umax = 0.0;
  for (double x : u.nodal()) umax = std::max(umax, std::abs(x));
  rep.shape_tol = 1e-8 * umax + 1e-13;
  for (const SignInterval& iv : prof.intervals) {
    IntervalShape s;
    s.interval = iv;
    double dmax = -HUGE_VAL;
    double dmin = HUGE_VAL;
    for (std::size_t i = 1; i < n; ++i) {
      const double x = g.x(i);
      if (!(x > iv.lo && x < iv.hi) || atom_cell[i - 1] || atom_cell[i]) continue;
      const double d2 = ac[i + 1] - 2.0 * ac[i] + ac[i - 1];
      dmax = std::max(dmax, d2);
      dmin = std::min(dmin, d2);
    }
    if (dmax == -HUGE_VAL) dmax = dmin = 0.0;
    if (iv.sign == Sign::Positive) s.max_violation = std::max(0.0, dmax);
    if (iv.sign == Sign::Negative) s.max_violation = std::max(0.0, -dmin);
    if (std::max(std::abs(dmax), std::abs(dmin)) <= rep.shape_tol) {
      s.shape = Shape::Affine;
    } else {
      s.shape = iv.sign == Sign::Negative ? Shape::Convex : Shape::Concave;
      if (iv.sign == Sign::Zero) s.shape = dmax > rep.shape_tol ? Shape::Convex : Shape::Concave;
    }
    if (iv.sign != Sign::Zero && s.max_violation > rep.shape_tol) {
      std::ostringstream os;
      os.precision(6);
      os << (iv.sign == Sign::Positive ? "concavity" : "convexity") << " violated on [" << iv.lo << ", " << iv.hi
         << "] by " << s.max_violation << " (shape_tol " << rep.shape_tol << ")";
      throw Error(ErrorCode::ShapeViolation, os.str());
    }
    rep.shapes.push_back(s);
  }

  std::vector<Sign> signs;
  for (const auto& iv : prof.intervals)
    if (iv.sign != Sign::Zero) signs.push_back(iv.sign);
  if (signs.empty() || (signs.size() == 1 && signs[0] == Sign::Positive)) {
    rep.taxonomy_case = TaxonomyCase::I;
  } else if (signs.size() == 1) {
    rep.taxonomy_case = TaxonomyCase::II;
  } else if (signs.size() == 2) {
    rep.taxonomy_case = signs[0] == Sign::Positive ? TaxonomyCase::III : TaxonomyCase::IIII;
  } else {
    rep.taxonomy_case = TaxonomyCase::Composite;
  }

  rep.criteria_verdicts = attached_criteria(f, u, prof);
  rep.w21_claim = rep.jumps.empty() && rep.saturated_cells == 0 && rep.left.status == SlopeStatus::Finite &&
                  rep.right.status == SlopeStatus::Finite;
  return Classification{std::move(rep), std::move(u)};
}

}  // namespace curvlab
