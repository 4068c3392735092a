#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

#include "curvlab/boundary_checks.hpp"
#include "curvlab/classify.hpp"
#include "curvlab/criteria.hpp"
#include "curvlab/grid.hpp"
#include "curvlab/probes.hpp"
#include "curvlab/solve.hpp"
#include "curvlab/weak_form.hpp"

namespace curvlab::cli {

inline constexpr const char* kSolutionSchema = "curvlab.solution/1";
inline constexpr const char* kCriteriaSchema = "curvlab.criteria/1";
inline constexpr const char* kProbeSchema = "curvlab.probe/1";
inline constexpr const char* kOracleSchema = "curvlab.oracle/1";
inline constexpr const char* kErrorSchema = "curvlab.error/1";

[[nodiscard]] nlohmann::json to_json(const criteria::CriterionVerdict& v);
[[nodiscard]] nlohmann::json to_json(const SignProfile& s);
[[nodiscard]] nlohmann::json to_json(const RegularityReport& r);
[[nodiscard]] nlohmann::json to_json(const WeakFormReport& w);
[[nodiscard]] nlohmann::json to_json(const BoundaryReport& b);
[[nodiscard]] nlohmann::json to_json(const PositivityResult& p);
[[nodiscard]] nlohmann::json to_json(const OsgoodResult& o);
[[nodiscard]] nlohmann::json trace_json(const std::vector<TraceRow>& trace);

/// Grid, atoms and nodal table (x, u, p) of a solution; p at a node is the mean of
/// the adjacent cell momenta (the end cell at the ends).
[[nodiscard]] nlohmann::json solution_json(const GridFunction& u);
/// Inverse of solution_json.
[[nodiscard]] GridFunction solution_from_json(const nlohmann::json& j);

[[nodiscard]] std::vector<double> nodal_momentum(const GridFunction& u);

/// Plot table with header "# x u p f", 17 significant digits.
[[nodiscard]] std::string columnar(const GridFunction& u, const CurvatureField& f);
/// Reads the x and u columns of a columnar table into a grid function on a uniform grid.
/// Throws ParseError (code ConfigError) on malformed rows or a non-uniform grid.
[[nodiscard]] GridFunction read_columnar(std::string_view text);

}  // namespace curvlab::cli
