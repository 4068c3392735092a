#include "curvlab/run.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "curvlab/boundary_checks.hpp"
#include "curvlab/classify.hpp"
#include "curvlab/momentum.hpp"
#include "curvlab/report.hpp"
#include "curvlab/solve.hpp"
#include "curvlab/weak_form.hpp"

namespace curvlab::cli {

using nlohmann::json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ShapeViolation: return kExitContradiction;
    case ErrorCode::MaxIterations:
    case ErrorCode::UnboundedBelow:
    case ErrorCode::OuterNoConvergence:
    case ErrorCode::RangeExceeded:
    case ErrorCode::DomainError:
    case ErrorCode::SlopeInfinite: return kExitNonconvergence;
    case ErrorCode::ConfigError:
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::CriterionShapeError:
    case ErrorCode::NotLocallyIntegrable: return kExitConfig;
    default: return kExitFailure;
  }
}

json error_json(const std::exception& e) {
  json j{{"schema", kErrorSchema}, {"message", e.what()}};
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    j["code"] = to_string(err->code());
    j["exit_code"] = exit_code_for(err->code());
  } else {
    j["code"] = "Internal";
    j["exit_code"] = static_cast<int>(kExitFailure);
  }
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    j["line"] = pe->line();
    j["column"] = pe->column();
  }
  return j;
}

std::string without_timing(const json& report) {
  json copy = report;
  copy.erase("timing_ms");
  return copy.dump(2);
}

namespace {

using Clock = std::chrono::steady_clock;

json config_echo(const ProblemConfig& cfg) {
  json j = json::object();
  for (const auto& [section, keys] : cfg.echo) {
    json s = json::object();
    for (const auto& [k, v] : keys) s[k] = v;
    j[section.empty() ? "top" : section] = s;
  }
  return j;
}

GridFunction initial_guess(const ProblemConfig& cfg, const Grid& g) {
  if (!cfg.initial) return GridFunction::constant(g, 0.0);
  std::vector<double> u(g.nodes());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = cfg.initial->eval(g.x(i));
  return GridFunction::from_nodal(g, std::move(u));
}

json solve_block(const SolveResult& r) {
  return json{{"converged", r.converged},
              {"outer_iterations", r.outer_iterations},
              {"last_change", r.last_change},
              {"stationarity", r.stationarity},
              {"trace", trace_json(r.trace)}};
}

// Classification, weak form and boundary report of a solution. Returns the exit code.
int analyse(const ProblemConfig& cfg, const GridFunction& u, json& rec, std::string& columns) {
  const CurvatureField& f = *cfg.f;
  int code = kExitOk;
  GridFunction atomized = u;
  try {
    Classification c = classify_solution(u, f, cfg.params.p_tol);
    rec["regularity"] = to_json(c.report);
    atomized = c.u;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ShapeViolation) throw;
    rec["regularity"] = error_json(e);
    code = kExitContradiction;
  }
  if (cfg.bc) {
    rec["weak_form"] = to_json(verify_weak_form(atomized, f, *cfg.bc, 1e-6, cfg.params.p_tol));
    rec["boundary"] = to_json(boundary_attainment(atomized, f, *cfg.bc, cfg.params.p_tol));
  }
  rec["solution"] = solution_json(atomized);
  columns = columnar(atomized, f);
  return code;
}

RunOutput run_solve(const ProblemConfig& cfg, bool classify_only) {
  RunOutput out;
  json rec{{"schema", kSolutionSchema}, {"mode", to_string(cfg.mode)}, {"config", config_echo(cfg)}};
  GridFunction u = GridFunction::constant(Grid(cfg.a, cfg.b, cfg.n), 0.0);
  if (classify_only && cfg.solution_file) {
    std::ifstream in(*cfg.solution_file, std::ios::binary);
    if (!in) throw ParseError("cannot open solution file '" + *cfg.solution_file + "'", 0, 0, ErrorCode::ConfigError);
    std::ostringstream ss;
    ss << in.rdbuf();
    u = read_columnar(ss.str());
    rec["source"] = "file";
  } else {
    const Grid g(cfg.a, cfg.b, cfg.n);
    SolveResult r = solve(*cfg.f, *cfg.bc, g, cfg.params, initial_guess(cfg, g));
    rec["solve"] = solve_block(r);
    rec["source"] = "solver";
    u = r.u;
  }
  out.exit_code = analyse(cfg, u, rec, out.columns);
  rec["status"] = out.exit_code == kExitOk ? "complete" : "CONTRADICTION";
  out.report = std::move(rec);
  return out;
}

RunOutput run_criteria(const ProblemConfig& cfg) {
  RunOutput out;
  json rows = json::array();
  for (const CriterionRequest& c : cfg.criteria) {
    json row{{"name", c.name}};
    try {
      criteria::CriterionVerdict v;
      switch (c.kind) {
        case CriterionRequest::Kind::Powerlog: {
          const bool div = criteria::powerlog_sqrt_divergence(c.envelope.alpha, c.envelope.beta);
          v.divergent = div;
          v.antiderivative_positive = true;
          v.holds = div ? criteria::Holds::Guaranteed : criteria::Holds::NotGuaranteed;
          v.detail = div ? "integral of M^(-1/2) diverges" : "integral of M^(-1/2) converges";
          row["kind"] = "powerlog";
          break;
        }
        case CriterionRequest::Kind::Endpoint:
          v = criteria::endpoint_regularity(c.endpoint_case, c.envelope);
          row["kind"] = "endpoint";
          row["case"] = criteria::to_string(c.endpoint_case);
          break;
        case CriterionRequest::Kind::Interior:
          v = criteria::interior_regularity(c.interior_case, c.envelope, cfg.a, cfg.b);
          row["kind"] = "interior";
          row["case"] = criteria::to_string(c.interior_case);
          break;
        case CriterionRequest::Kind::Smp:
          v = criteria::smp_check(c.comparison);
          row["kind"] = "smp";
          break;
        case CriterionRequest::Kind::Osgood:
          v = criteria::osgood_check(c.left, c.right);
          row["kind"] = "osgood";
          break;
      }
      row["verdict"] = to_json(v);
    } catch (const Error& e) {
      row["error"] = error_json(e);
      out.exit_code = std::max(out.exit_code, exit_code_for(e.code()));
    }
    rows.push_back(row);
  }
  out.report = json{{"schema", kCriteriaSchema}, {"mode", to_string(cfg.mode)}, {"config", config_echo(cfg)},
                    {"criteria", rows}, {"status", out.exit_code == kExitOk ? "complete" : "error"}};
  return out;
}

json oracle_row(const std::string& name, double value, double bound) {
  return json{{"check", name}, {"value", value}, {"bound", bound}, {"status", value <= bound ? "PASS" : "FAIL"}};
}

RunOutput run_oracle(const ProblemConfig& cfg) {
  RunOutput out;
  const Grid g(cfg.a, cfg.b, cfg.n);
  const CurvatureField& f = *cfg.f;
  SolveResult r = solve(f, *cfg.bc, g, cfg.params, initial_guess(cfg, g));
  json rows = json::array();
  const auto v = r.u.nodal();
  const double h = g.h();

  const auto* cst = std::get_if<ConstantLoad>(&f.spec());
  const auto* dir = cfg.bc->get_if<Dirichlet>();
  if (cst && dir && dir->k0 == 0.0 && dir->k1 == 0.0 && cfg.a == 0.0 && cfg.b == 1.0 && cst->value > 0.0 &&
      cst->value <= 2.0) {
    double err = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) err = std::max(err, std::abs(v[i] - circle_arc(cst->value, g.x(i))));
    rows.push_back(oracle_row("circle_arc_sup_error", err, 1e-3));
  }
  Classification c = classify_solution(r.u, f, cfg.params.p_tol);
  rows.push_back(oracle_row("weak_form_max_residual", verify_weak_form(c.u, f, *cfg.bc, 1e-6, cfg.params.p_tol).max_hat_residual, 1e-6));
  if (c.report.w21_claim) {
    const auto p = r.u.momentum();
    const MomentumResult m = momentum_integrate(f, v[0], p[0] + 0.5 * h * f(g.a(), v[0]), g, cfg.params.p_tol);
    const auto mv = m.u.nodal();
    double gap = 0.0;
    for (std::size_t i = 0; i <= m.last_node; ++i) gap = std::max(gap, std::abs(mv[i] - v[i]));
    rows.push_back(oracle_row("momentum_sup_gap", gap, 10.0 * h));
    try {
      const U2Report u2 = u2_integrability(r.u, cfg.params.p_tol);
      rows.push_back(oracle_row("u2_identity_gap", u2.gap, 10.0 * h));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotApplicable) throw;
    }
  }
  bool all = true;
  for (const auto& row : rows) all = all && row["status"] == "PASS";
  out.exit_code = all ? kExitOk : kExitContradiction;
  out.report = json{{"schema", kOracleSchema},    {"mode", to_string(cfg.mode)},
                    {"config", config_echo(cfg)}, {"solve", solve_block(r)},
                    {"checks", rows},             {"status", all ? "PASS" : "FAIL"}};
  out.columns = columnar(c.u, f);
  return out;
}

Trajectory supplied(const ProbeRequest& p) {
  Trajectory tr;
  const double a = p.instance.alpha;
  const double b = p.instance.omega;
  for (std::size_t i = 0; i <= p.resolution; ++i) {
    const double t = i == p.resolution ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(p.resolution);
    tr.t.push_back(t);
    tr.v.push_back(p.v->eval(t));
    tr.dv.push_back(p.dv->eval(t));
  }
  return tr;
}

RunOutput run_probe(const ProblemConfig& cfg) {
  RunOutput out;
  const ProbeRequest& p = *cfg.probe;
  json result;
  if (p.kind == ProbeRequest::Kind::Positivity) {
    try {
      const PositivityResult res = p.v ? positivity_probe(p.instance, supplied(p))
                                       : positivity_probe(p.instance, p.resolution);
      result = to_json(res);
      if (res.contradiction) out.exit_code = kExitContradiction;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::LocalizationUnverifiable) throw;
      result = json{{"probe", "positivity"}, {"status", "INCONCLUSIVE"}, {"detail", e.what()}};
    }
    result["rhs"] = p.instance.rhs.describe();
  } else {
    const OsgoodResult res = osgood_probe(p.left, p.right, supplied(p), p.tol);
    result = to_json(res);
    if (res.contradiction) out.exit_code = kExitContradiction;
  }
  out.report = json{{"schema", kProbeSchema}, {"mode", to_string(cfg.mode)}, {"config", config_echo(cfg)},
                    {"result", result}, {"status", result["status"]}};
  return out;
}

}  // namespace

RunOutput run(const ProblemConfig& cfg) {
  const auto t0 = Clock::now();
  RunOutput out;
  try {
    switch (cfg.mode) {
      case Mode::Solve: out = run_solve(cfg, false); break;
      case Mode::Classify: out = run_solve(cfg, true); break;
      case Mode::CheckCriteria: out = run_criteria(cfg); break;
      case Mode::OracleCompare: out = run_oracle(cfg); break;
      case Mode::Probe: out = run_probe(cfg); break;
    }
  } catch (const OuterNoConvergence& e) {
    out.report = error_json(e);
    out.report["last_iterate"] = e.last();
    out.report["previous_iterate"] = e.previous();
    out.report["trace"] = trace_json(e.trace());
    out.exit_code = kExitNonconvergence;
  } catch (const Error& e) {
    out.report = error_json(e);
    out.exit_code = exit_code_for(e.code());
  }
  if (out.report.contains("schema") && out.report["schema"] == kErrorSchema) {
    out.report["mode"] = to_string(cfg.mode);
    out.report["config"] = config_echo(cfg);
  }
  out.report["timing_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return out;
}

RunOutput run_file(const std::string& path, Mode mode) {
  try {
    ProblemConfig cfg = load_config(path, mode);
    if (cfg.solution_file && std::filesystem::path(*cfg.solution_file).is_relative())
      cfg.solution_file = (std::filesystem::path(path).parent_path() / *cfg.solution_file).string();
    return run(cfg);
  } catch (const Error& e) {
    RunOutput out;
    out.report = error_json(e);
    out.report["config_path"] = path;
    out.exit_code = kExitConfig;
    return out;
  }
}

}  // namespace curvlab::cli
