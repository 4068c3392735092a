#include "curvlab/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "curvlab/errors.hpp"

namespace curvlab::cli {

using nlohmann::json;

json to_json(const criteria::CriterionVerdict& v) {
  return json{{"holds", criteria::to_string(v.holds)},
              {"divergent", v.divergent},
              {"antiderivative_positive", v.antiderivative_positive},
              {"heuristic", v.heuristic},
              {"detail", v.detail}};
}

json to_json(const SignProfile& s) {
  json iv = json::array();
  for (const auto& i : s.intervals) iv.push_back({{"lo", i.lo}, {"hi", i.hi}, {"sign", to_string(i.sign)}});
  return json{{"intervals", iv}, {"change_points", s.change_points}};
}

namespace {

json endpoint_json(const EndpointStatus& e) {
  json j{{"status", to_string(e.status)}, {"flux", e.flux}};
  if (e.status == SlopeStatus::Finite) j["slope"] = e.slope;
  return j;
}

}  // namespace

json to_json(const RegularityReport& r) {
  json shapes = json::array();
  for (const auto& s : r.shapes)
    shapes.push_back({{"lo", s.interval.lo},
                      {"hi", s.interval.hi},
                      {"sign", to_string(s.interval.sign)},
                      {"shape", to_string(s.shape)},
                      {"max_violation", s.max_violation}});
  json jumps = json::array();
  for (const auto& j : r.jumps)
    jumps.push_back({{"location", j.location},
                     {"node", j.node},
                     {"u_left", j.u_left},
                     {"u_right", j.u_right},
                     {"height", j.height},
                     {"direction", j.direction < 0 ? "down" : "up"},
                     {"continuous_blowup", j.continuous_blowup}});
  json crit = json::array();
  for (const auto& c : r.criteria_verdicts)
    crit.push_back({{"case", c.label}, {"point", c.point}, {"verdict", to_json(c.verdict)}});
  return json{{"sign_intervals", to_json(r.sign_intervals)},
              {"shapes", shapes},
              {"shape_tol", r.shape_tol},
              {"endpoint_status", {{"a", endpoint_json(r.left)}, {"b", endpoint_json(r.right)}}},
              {"jumps", jumps},
              {"saturated_cells", r.saturated_cells},
              {"taxonomy_case", to_string(r.taxonomy_case)},
              {"criteria_verdicts", crit},
              {"w21_claim", r.w21_claim}};
}

json to_json(const WeakFormReport& w) {
  json atoms = json::array();
  for (const auto& a : w.atoms)
    atoms.push_back({{"node", a.node},
                     {"height", a.height},
                     {"singular_residual", a.singular_residual},
                     {"flux_defect", a.flux_defect},
                     {"admissible", a.admissible}});
  return json{{"max_hat_residual", w.max_hat_residual},
              {"hat_pass", w.hat_pass},
              {"atoms", atoms},
              {"atoms_pass", w.atoms_pass},
              {"pass", w.pass}};
}

json to_json(const BoundaryReport& b) {
  auto end = [](const EndReport& e) {
    return json{{"attained", e.attained}, {"trace", e.trace},       {"gap", e.gap},
                {"flux", e.flux},         {"saturated", e.saturated}, {"residual", e.residual}};
  };
  json j{{"condition", b.condition}, {"a", end(b.left)}, {"b", end(b.right)}};
  if (b.condition == "periodic") {
    j["value_gap"] = b.value_gap;
    j["flux_gap"] = b.flux_gap;
  }
  return j;
}

json to_json(const PositivityResult& p) {
  json j{{"probe", "positivity"},
         {"outcome", to_string(p.outcome)},
         {"verdict", to_json(p.verdict)},
         {"localization", to_string(p.localization)},
         {"band_samples", p.band_samples},
         {"contradiction", p.contradiction},
         {"status", p.contradiction ? "FAIL" : "PASS"},
         {"detail", p.detail}};
  if (p.outcome != PositivityOutcome::StronglyPositive) j["location"] = p.location;
  return j;
}

json to_json(const OsgoodResult& o) {
  json j{{"probe", "osgood"},
         {"outcome", o.sign_change_found ? "sign_change_found" : "sign_definite"},
         {"verdict", to_json(o.verdict)},
         {"contradiction", o.contradiction},
         {"status", o.contradiction ? "FAIL" : "PASS"}};
  if (o.sign_change_found) j["location"] = o.location;
  return j;
}

json trace_json(const std::vector<TraceRow>& trace) {
  json rows = json::array();
  for (const auto& t : trace)
    rows.push_back({{"iteration", t.iteration},
                    {"energy", t.energy},
                    {"sup_change", t.sup_change},
                    {"inner_iterations", t.inner_iterations}});
  return rows;
}

std::vector<double> nodal_momentum(const GridFunction& u) {
  const auto p = u.momentum();
  const std::size_t n = p.size();
  std::vector<double> q(n + 1);
  q[0] = p[0];
  q[n] = p[n - 1];
  for (std::size_t i = 1; i < n; ++i) q[i] = 0.5 * (p[i - 1] + p[i]);
  return q;
}

json solution_json(const GridFunction& u) {
  const Grid& g = u.grid();
  std::vector<double> x(g.nodes());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = g.x(i);
  json jumps = json::array();
  for (const Jump& j : u.jumps())
    jumps.push_back({{"node", j.node},
                     {"location", g.x(j.node)},
                     {"height", j.height},
                     {"first_cell", j.first_cell},
                     {"cells", j.cells},
                     {"node_offset", j.node_offset},
                     {"u_left", u.left_trace(j)},
                     {"u_right", u.right_trace(j)}});
  const auto ac = u.ac_values();
  return json{{"grid", {{"a", g.a()}, {"b", g.b()}, {"n", g.cells()}}},
              {"x", x},
              {"u", u.nodal()},
              {"u_ac", std::vector<double>(ac.begin(), ac.end())},
              {"p", nodal_momentum(u)},
              {"jumps", jumps}};
}

GridFunction solution_from_json(const json& j) {
  const Grid g(j.at("grid").at("a").get<double>(), j.at("grid").at("b").get<double>(),
               j.at("grid").at("n").get<std::size_t>());
  std::vector<Jump> jumps;
  for (const auto& jj : j.at("jumps")) {
    Jump k;
    k.node = jj.at("node").get<std::size_t>();
    k.height = jj.at("height").get<double>();
    k.first_cell = jj.at("first_cell").get<std::size_t>();
    k.cells = jj.at("cells").get<std::size_t>();
    k.node_offset = jj.at("node_offset").get<double>();
    jumps.push_back(k);
  }
  return GridFunction(g, j.at("u_ac").get<std::vector<double>>(), std::move(jumps));
}

std::string columnar(const GridFunction& u, const CurvatureField& f) {
  const Grid& g = u.grid();
  const auto v = u.nodal();
  const auto p = nodal_momentum(u);
  std::string out = "# x u p f\n";
  char buf[128];
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = g.x(i);
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g\n", x, v[i], p[i], f(x, v[i]));
    out += buf;
  }
  return out;
}

GridFunction read_columnar(std::string_view text) {
  std::vector<double> xs;
  std::vector<double> us;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    std::size_t i = 0;
    auto skip = [&] {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    };
    skip();
    if (i >= line.size() || line[i] == '#') continue;
    double vals[2] = {0.0, 0.0};
    for (double& v : vals) {
      skip();
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
      if (ec != std::errc())
        throw ParseError("malformed number in columnar file", line_no, static_cast<int>(i) + 1, ErrorCode::ConfigError);
      i = static_cast<std::size_t>(ptr - line.data());
    }
    xs.push_back(vals[0]);
    us.push_back(vals[1]);
  }
  if (xs.size() < 3) throw ParseError("columnar file needs at least 3 rows", line_no, 1, ErrorCode::ConfigError);
  const Grid g(xs.front(), xs.back(), xs.size() - 1);
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (std::abs(xs[i] - g.x(i)) > 1e-9 * (g.b() - g.a()))
      throw ParseError("columnar file is not on a uniform grid", static_cast<int>(i) + 2, 1, ErrorCode::ConfigError);
  return GridFunction::from_nodal(g, std::move(us));
}

}  // namespace curvlab::cli
