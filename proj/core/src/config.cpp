#include "curvlab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "curvlab/errors.hpp"

namespace curvlab::cli {

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Solve: return "solve";
    case Mode::Classify: return "classify";
    case Mode::CheckCriteria: return "check-criteria";
    case Mode::OracleCompare: return "oracle-compare";
    case Mode::Probe: return "probe";
  }
  return "?";
}

Mode parse_mode(std::string_view name) {
  for (Mode m : {Mode::Solve, Mode::Classify, Mode::CheckCriteria, Mode::OracleCompare, Mode::Probe})
    if (name == to_string(m)) return m;
  throw Error(ErrorCode::ConfigError, "unknown mode '" + std::string(name) + "'");
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
  int key_col = 0;
  int value_col = 0;
  bool used = false;
};

struct Section {
  std::string kind;  // "", domain, load, ..., criterion
  std::string name;  // criterion name
  int line = 0;
  std::map<std::string, Entry> entries;
};

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"", {"mode"}},
      {"domain", {"a", "b", "n"}},
      {"load", {"type", "value", "z", "left", "right", "amplitude", "alpha", "expr", "h", "k"}},
      {"boundary", {"type", "k0", "k1", "l0", "l1"}},
      {"params", {"outer_max", "outer_tol", "inner_tol", "inner_max", "damping", "p_tol", "s_min", "s_max"}},
      {"initial", {"u0"}},
      {"solution", {"file"}},
      {"criterion",
       {"kind", "case", "point", "side", "C", "alpha", "beta", "bound", "delta", "p", "q", "epsilon", "zero_case",
        "left_C", "left_q", "left_r", "left_epsilon", "right_C", "right_q", "right_r", "right_epsilon"}},
      {"probe",
       {"kind", "rhs", "c", "q", "expr", "alpha", "omega", "v0", "dv0", "epsilon", "resolution", "G_C", "G_p", "G_q",
        "zero_case", "v", "dv", "left_C", "left_q", "left_r", "left_epsilon", "right_C", "right_q", "right_r",
        "right_epsilon", "tol"}},
  };
  return keys;
}

[[noreturn]] void fail(const std::string& msg, int line, int col) {
  throw ParseError(msg, line, col, ErrorCode::ConfigError);
}

std::string_view trim(std::string_view s, int& offset) {
  std::size_t lo = 0;
  while (lo < s.size() && (s[lo] == ' ' || s[lo] == '\t' || s[lo] == '\r')) ++lo;
  std::size_t hi = s.size();
  while (hi > lo && (s[hi - 1] == ' ' || s[hi - 1] == '\t' || s[hi - 1] == '\r')) --hi;
  offset += static_cast<int>(lo);
  return s.substr(lo, hi - lo);
}

class Reader {
 public:
  explicit Reader(Section& s) : s_(s) {}

  bool has(const std::string& key) const { return s_.entries.count(key) != 0; }

  const Entry& raw(const std::string& key) {
    auto it = s_.entries.find(key);
    if (it == s_.entries.end()) fail("missing key '" + key + "' in section " + label(), s_.line, 1);
    it->second.used = true;
    return it->second;
  }

  std::string text(const std::string& key) { return raw(key).value; }

  std::string text(const std::string& key, const std::string& fallback) { return has(key) ? text(key) : fallback; }

  double number(const std::string& key) {
    const Entry& e = raw(key);
    double v = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
      fail("'" + e.value + "' is not a finite number", e.line, e.value_col + static_cast<int>(ptr - first));
    return v;
  }

  double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

  long integer(const std::string& key, long fallback) {
    if (!has(key)) return fallback;
    const Entry& e = raw(key);
    long v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
      fail("'" + e.value + "' is not an integer", e.line, e.value_col + static_cast<int>(ptr - first));
    return v;
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const Entry& e = raw(key);
    if (e.value == "true" || e.value == "1") return true;
    if (e.value == "false" || e.value == "0") return false;
    fail("'" + e.value + "' is not a boolean", e.line, e.value_col);
  }

  Expr expr(const std::string& key, Expr::Variables vars) {
    const Entry& e = raw(key);
    try {
      return Expr::parse(e.value, vars);
    } catch (const ParseError& pe) {
      fail("in '" + key + "': " + pe.what(), e.line, e.value_col + pe.column() - 1);
    }
  }

  template <class T>
  T choice(const std::string& key, const std::vector<std::pair<std::string, T>>& options) {
    const Entry& e = raw(key);
    for (const auto& [name, value] : options)
      if (e.value == name) return value;
    std::string list;
    for (const auto& o : options) list += (list.empty() ? "" : "|") + o.first;
    fail("'" + e.value + "' is not one of " + list, e.line, e.value_col);
  }

  void finish() {
    for (const auto& [key, e] : s_.entries)
      if (!e.used) fail("key '" + key + "' does not apply here (section " + label() + ")", e.line, e.key_col);
  }

  std::string label() const {
    if (s_.kind.empty()) return "<top>";
    return "[" + s_.kind + (s_.name.empty() ? "" : " " + s_.name) + "]";
  }

  int line() const { return s_.line; }

 private:
  Section& s_;
};

// Wraps domain checks of the library as config errors at the section header.
template <class F>
auto guarded(Reader& r, F&& make) {
  try {
    return make();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail(std::string(e.what()) + " (section " + r.label() + ")", r.line(), 1);
  }
}

CurvatureField read_load(Reader& r) {
  const std::string type = r.choice<std::string>(
      "type", {{"constant", "constant"}, {"step", "step"}, {"power_sign", "power_sign"}, {"expr", "expr"},
               {"product", "product"}});
  if (type == "constant") return CurvatureField::constant(r.number("value"));
  if (type == "step") return CurvatureField::step(r.number("z"), r.number("left"), r.number("right"));
  if (type == "power_sign") {
    const double z = r.number("z");
    const double A = r.number("amplitude");
    const double alpha = r.number("alpha");
    return guarded(r, [&] { return CurvatureField::power_sign(z, A, alpha); });
  }
  if (type == "expr") return CurvatureField(ExprLoad{r.expr("expr", Expr::Variables::XAndS)});
  Expr h = r.expr("h", Expr::Variables::XOnly);
  Expr k = r.expr("k", Expr::Variables::XOnly);
  return CurvatureField(SeparatedProduct{std::move(h), std::move(k)});
}

BoundaryCondition read_boundary(Reader& r) {
  const std::string type = r.choice<std::string>(
      "type", {{"dirichlet", "dirichlet"}, {"neumann", "neumann"}, {"robin", "robin"}, {"periodic", "periodic"}});
  return guarded(r, [&]() -> BoundaryCondition {
    if (type == "dirichlet") return Dirichlet{r.number("k0", 0.0), r.number("k1", 0.0)};
    if (type == "neumann") return Neumann{r.number("k0", 0.0), r.number("k1", 0.0)};
    if (type == "robin") return Robin{r.number("l0", -1.0), r.number("k0", 0.0), r.number("l1", 1.0), r.number("k1", 0.0)};
    return Periodic{};
  });
}

criteria::StateEnvelope read_state(Reader& r, const std::string& prefix) {
  criteria::StateEnvelope s;
  s.C = r.number(prefix + "_C", 1.0);
  s.q = r.number(prefix + "_q", 1.0);
  s.r = r.number(prefix + "_r", 0.0);
  s.epsilon = r.number(prefix + "_epsilon", 0.5);
  return s;
}

CriterionRequest read_criterion(Reader& r, const std::string& name) {
  using K = CriterionRequest::Kind;
  CriterionRequest c;
  c.name = name;
  c.kind = r.choice<K>("kind", {{"powerlog", K::Powerlog},
                                {"endpoint", K::Endpoint},
                                {"interior", K::Interior},
                                {"smp", K::Smp},
                                {"osgood", K::Osgood}});
  auto envelope = [&](double default_point, criteria::Side default_side) {
    criteria::Envelope& e = c.envelope;
    e.point = r.number("point", default_point);
    e.side = r.has("side") ? r.choice<criteria::Side>("side", {{"left", criteria::Side::Left}, {"right", criteria::Side::Right}})
                           : default_side;
    e.C = r.number("C", 1.0);
    e.alpha = r.number("alpha");
    e.beta = r.number("beta", 0.0);
    e.bound = r.has("bound") ? r.choice<criteria::Bound>(
                                   "bound", {{"upper", criteria::Bound::UpperMu}, {"lower", criteria::Bound::LowerNu}})
                             : criteria::Bound::UpperMu;
    e.delta = r.number("delta", 0.5);
  };
  switch (c.kind) {
    case K::Powerlog:
      c.envelope.alpha = r.number("alpha");
      c.envelope.beta = r.number("beta", 0.0);
      break;
    case K::Endpoint:
      c.endpoint_case = r.choice<criteria::EndpointCase>("case", {{"j", criteria::EndpointCase::J},
                                                                  {"jj", criteria::EndpointCase::JJ},
                                                                  {"jjj", criteria::EndpointCase::JJJ},
                                                                  {"jjjj", criteria::EndpointCase::JJJJ}});
      envelope(0.0, criteria::Side::Right);
      break;
    case K::Interior:
      c.interior_case =
          r.choice<criteria::InteriorCase>("case", {{"h", criteria::InteriorCase::H}, {"hh", criteria::InteriorCase::HH}});
      envelope(0.5, criteria::Side::Left);
      break;
    case K::Smp:
      c.comparison.zero_case = r.boolean("zero_case", false);
      c.comparison.C = r.number("C", 1.0);
      c.comparison.p = r.number("p", 2.0);
      c.comparison.q = r.number("q", 0.0);
      c.comparison.epsilon = r.number("epsilon", 0.5);
      break;
    case K::Osgood:
      c.left = read_state(r, "left");
      c.right = read_state(r, "right");
      break;
  }
  return c;
}

ProbeRequest read_probe(Reader& r) {
  using K = ProbeRequest::Kind;
  ProbeRequest p;
  p.kind = r.choice<K>("kind", {{"positivity", K::Positivity}, {"osgood", K::Osgood}});
  OdeInstance& inst = p.instance;
  inst.alpha = r.number("alpha", 0.0);
  inst.omega = r.number("omega", 1.0);
  p.resolution = static_cast<std::size_t>(std::max(2L, r.integer("resolution", 1000)));
  if (r.has("v")) p.v = r.expr("v", Expr::Variables::XOnly);
  if (r.has("dv")) p.dv = r.expr("dv", Expr::Variables::XOnly);
  if (p.v.has_value() != p.dv.has_value()) fail("a supplied trajectory needs both v and dv", r.line(), 1);
  if (p.kind == K::Positivity) {
    using RK = OdeRhs::Kind;
    inst.rhs.kind = r.choice<RK>("rhs", {{"power", RK::Power},
                                        {"linear", RK::Linear},
                                        {"curvature_inverse", RK::CurvatureInverse},
                                        {"expr", RK::Expression}});
    if (inst.rhs.kind == RK::Expression) {
      inst.rhs.expr = r.expr("expr", Expr::Variables::XAndS);
    } else {
      inst.rhs.c = r.number("c", 1.0);
      if (inst.rhs.kind != RK::Linear) inst.rhs.q = r.number("q", 1.0);
    }
    if (!p.v) {
      inst.v0 = r.number("v0", 0.0);
      inst.dv0 = r.number("dv0", 1.0);
    }
    inst.epsilon = r.number("epsilon", 0.5);
    inst.comparison.zero_case = r.boolean("zero_case", false);
    inst.comparison.C = r.number("G_C", 1.0);
    inst.comparison.p = r.number("G_p", 2.0);
    inst.comparison.q = r.number("G_q", 0.0);
    inst.comparison.epsilon = inst.epsilon;
  } else {
    if (!p.v) fail("the osgood probe needs a supplied trajectory (v, dv)", r.line(), 1);
    p.left = read_state(r, "left");
    p.right = read_state(r, "right");
    p.tol = r.number("tol", 1e-8);
  }
  return p;
}

std::vector<Section> split_sections(std::string_view text) {
  std::vector<Section> sections(1);
  sections[0].line = 1;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    int col = 1;
    std::string_view body = trim(line, col);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') fail("section header must end with ']'", line_no, col + static_cast<int>(body.size()));
      int inner_col = col + 1;
      std::string_view inner = trim(body.substr(1, body.size() - 2), inner_col);
      const std::size_t sp = inner.find_first_of(" \t");
      Section s;
      s.kind = std::string(inner.substr(0, sp));
      if (sp != std::string_view::npos) {
        int name_col = inner_col + static_cast<int>(sp);
        s.name = std::string(trim(inner.substr(sp), name_col));
      }
      s.line = line_no;
      if (s.kind.empty() || !allowed_keys().count(s.kind))
        fail("unknown section '" + std::string(inner) + "'", line_no, inner_col);
      if (s.kind == "criterion" && s.name.empty()) fail("criterion sections need a name", line_no, inner_col);
      if (s.kind != "criterion" && !s.name.empty())
        fail("section [" + s.kind + "] takes no name", line_no, inner_col + static_cast<int>(s.kind.size()) + 1);
      for (const Section& other : sections)
        if (!other.kind.empty() && other.kind == s.kind && other.name == s.name)
          fail("duplicate section [" + std::string(inner) + "]", line_no, inner_col);
      sections.push_back(std::move(s));
      continue;
    }
    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) fail("expected 'key = value'", line_no, col);
    int key_col = col;
    std::string_view key = trim(body.substr(0, eq), key_col);
    int value_col = col + static_cast<int>(eq) + 1;
    std::string_view value = trim(body.substr(eq + 1), value_col);
    if (key.empty()) fail("empty key", line_no, col);
    if (value.empty()) fail("empty value for '" + std::string(key) + "'", line_no, value_col);
    Section& cur = sections.back();
    const auto& keys = allowed_keys().at(cur.kind);
    if (!keys.count(std::string(key)))
      fail("unknown key '" + std::string(key) + "'" + (cur.kind.empty() ? "" : " in [" + cur.kind + "]"), line_no,
           key_col);
    if (cur.entries.count(std::string(key))) fail("duplicate key '" + std::string(key) + "'", line_no, key_col);
    cur.entries[std::string(key)] = Entry{std::string(value), line_no, key_col, value_col, false};
  }
  return sections;
}

}  // namespace

ProblemConfig parse_config(std::string_view text, std::optional<Mode> mode_override) {
  std::vector<Section> sections = split_sections(text);
  ProblemConfig cfg;
  for (const Section& s : sections) {
    const std::string label = s.kind.empty() ? "" : (s.name.empty() ? s.kind : s.kind + " " + s.name);
    for (const auto& [k, e] : s.entries) cfg.echo[label][k] = e.value;
  }

  Section* top = &sections[0];
  {
    Reader r(*top);
    if (r.has("mode")) {
      const Entry& e = r.raw("mode");
      Mode m;
      try {
        m = parse_mode(e.value);
      } catch (const Error& err) {
        fail(err.what(), e.line, e.value_col);
      }
      if (mode_override && *mode_override != m)
        fail("config mode '" + e.value + "' conflicts with the requested mode '" + to_string(*mode_override) + "'",
             e.line, e.value_col);
      cfg.mode = m;
    } else if (!mode_override) {
      fail("no mode given", 1, 1);
    }
    if (mode_override) cfg.mode = *mode_override;
    r.finish();
  }

  auto find = [&](const std::string& kind) -> Section* {
    for (Section& s : sections)
      if (s.kind == kind) return &s;
    return nullptr;
  };

  if (Section* s = find("domain")) {
    Reader r(*s);
    cfg.a = r.number("a", 0.0);
    cfg.b = r.number("b", 1.0);
    const long n = r.integer("n", 1000);
    if (!(cfg.a < cfg.b)) fail("domain needs a < b", s->line, 1);
    if (n < 2) fail("domain needs n >= 2", s->entries.at("n").line, s->entries.at("n").value_col);
    cfg.n = static_cast<std::size_t>(n);
    r.finish();
  }
  if (Section* s = find("load")) {
    Reader r(*s);
    cfg.f = read_load(r);
    r.finish();
  }
  if (Section* s = find("boundary")) {
    Reader r(*s);
    cfg.bc = read_boundary(r);
    r.finish();
  }
  if (Section* s = find("params")) {
    Reader r(*s);
    SolveParams& p = cfg.params;
    p.outer_max = static_cast<int>(r.integer("outer_max", p.outer_max));
    p.inner_max = static_cast<int>(r.integer("inner_max", p.inner_max));
    p.outer_tol = r.number("outer_tol", p.outer_tol);
    p.inner_tol = r.number("inner_tol", p.inner_tol);
    p.damping = r.number("damping", p.damping);
    p.p_tol = r.number("p_tol", p.p_tol);
    p.s_min = r.number("s_min", p.s_min);
    p.s_max = r.number("s_max", p.s_max);
    guarded(r, [&] {
      validate(p);
      return 0;
    });
    r.finish();
  }
  if (Section* s = find("initial")) {
    Reader r(*s);
    cfg.initial = r.expr("u0", Expr::Variables::XOnly);
    r.finish();
  }
  if (Section* s = find("solution")) {
    Reader r(*s);
    cfg.solution_file = r.text("file");
    r.finish();
  }
  for (Section& s : sections) {
    if (s.kind != "criterion") continue;
    Reader r(s);
    cfg.criteria.push_back(read_criterion(r, s.name));
    r.finish();
  }
  if (Section* s = find("probe")) {
    Reader r(*s);
    cfg.probe = read_probe(r);
    r.finish();
  }

  const bool needs_problem = cfg.mode == Mode::Solve || cfg.mode == Mode::OracleCompare ||
                             (cfg.mode == Mode::Classify && !cfg.solution_file);
  if (needs_problem && !cfg.f) fail("mode " + std::string(to_string(cfg.mode)) + " needs a [load] section", 1, 1);
  if (needs_problem && !cfg.bc) fail("mode " + std::string(to_string(cfg.mode)) + " needs a [boundary] section", 1, 1);
  if (cfg.mode == Mode::Classify && !cfg.f) fail("mode classify needs a [load] section", 1, 1);
  if (cfg.mode == Mode::CheckCriteria && cfg.criteria.empty())
    fail("mode check-criteria needs at least one [criterion NAME] section", 1, 1);
  if (cfg.mode == Mode::Probe && !cfg.probe) fail("mode probe needs a [probe] section", 1, 1);
  return cfg;
}

ProblemConfig load_config(const std::string& path, std::optional<Mode> mode_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open config file '" + path + "'", 0, 0, ErrorCode::ConfigError);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), mode_override);
}

}  // namespace curvlab::cli
