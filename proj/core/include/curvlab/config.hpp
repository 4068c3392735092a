#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curvlab/boundary.hpp"
#include "curvlab/criteria.hpp"
#include "curvlab/curvature_field.hpp"
#include "curvlab/energy.hpp"
#include "curvlab/probes.hpp"

namespace curvlab::cli {

enum class Mode { Solve, Classify, CheckCriteria, OracleCompare, Probe };

[[nodiscard]] const char* to_string(Mode m);
/// Throws Error(ConfigError) for an unknown name.
[[nodiscard]] Mode parse_mode(std::string_view name);

struct CriterionRequest {
  enum class Kind { Powerlog, Endpoint, Interior, Smp, Osgood };
  std::string name;
  Kind kind = Kind::Powerlog;
  criteria::EndpointCase endpoint_case = criteria::EndpointCase::J;
  criteria::InteriorCase interior_case = criteria::InteriorCase::H;
  criteria::Envelope envelope;
  criteria::ComparisonG comparison;
  criteria::StateEnvelope left;
  criteria::StateEnvelope right;
};

struct ProbeRequest {
  enum class Kind { Positivity, Osgood };
  Kind kind = Kind::Positivity;
  OdeInstance instance;
  std::size_t resolution = 1000;
  /// Supplied trajectory v(t), v'(t), written in the variable x.
  std::optional<Expr> v;
  std::optional<Expr> dv;
  criteria::StateEnvelope left;
  criteria::StateEnvelope right;
  double tol = 1e-8;
};

/// Ordered echo of the parsed file: section -> key -> raw value.
using Echo = std::map<std::string, std::map<std::string, std::string>>;

struct ProblemConfig {
  Mode mode = Mode::Solve;
  double a = 0.0;
  double b = 1.0;
  std::size_t n = 1000;
  std::optional<CurvatureField> f;
  std::optional<BoundaryCondition> bc;
  SolveParams params;
  /// Initial guess u0(x), written in x.
  std::optional<Expr> initial;
  /// Externally supplied solution (columnar file) for classify mode.
  std::optional<std::string> solution_file;
  std::vector<CriterionRequest> criteria;
  std::optional<ProbeRequest> probe;
  Echo echo;
};

/// Parses the key = value format:
///
///   mode = solve
///   [domain]    a, b, n
///   [load]      type = constant|step|power_sign|expr|product and its parameters
///   [boundary]  type = dirichlet|neumann|robin|periodic, k0, k1, l0, l1
///   [params]    outer_max, outer_tol, inner_tol, inner_max, damping, p_tol, s_min, s_max
///   [initial]   u0 = <expression in x>
///   [solution]  file = <columnar file>
///   [criterion NAME]  kind = powerlog|endpoint|interior|smp|osgood and its parameters
///   [probe]     kind = positivity|osgood and its parameters
///
/// '#' starts a comment. Unknown sections or keys, malformed numbers and malformed
/// expressions throw ParseError (code ConfigError) with 1-based line and column.
/// `mode_override`, when given, replaces the mode key (a conflicting key is an error).
[[nodiscard]] ProblemConfig parse_config(std::string_view text, std::optional<Mode> mode_override = std::nullopt);
[[nodiscard]] ProblemConfig load_config(const std::string& path, std::optional<Mode> mode_override = std::nullopt);

}  // namespace curvlab::cli
