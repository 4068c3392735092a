#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "curvlab/config.hpp"
#include "curvlab/errors.hpp"

namespace curvlab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitContradiction = 2,
  kExitNonconvergence = 3,
  kExitConfig = 4,
};

struct RunOutput {
  nlohmann::json report;
  /// Plot table for modes that produce a solution; empty otherwise.
  std::string columns;
  int exit_code = kExitOk;
};

[[nodiscard]] int exit_code_for(ErrorCode code);

/// Dispatches one configuration. Library errors become an error report with the
/// matching exit code; nothing escapes except std::bad_alloc.
[[nodiscard]] RunOutput run(const ProblemConfig& cfg);

/// Loads and runs a config file; config errors yield exit code 4.
[[nodiscard]] RunOutput run_file(const std::string& path, Mode mode);

/// JSON error record with code, message and (for parse errors) line and column.
[[nodiscard]] nlohmann::json error_json(const std::exception& e);

/// Report text with the timing field removed, for determinism comparisons.
[[nodiscard]] std::string without_timing(const nlohmann::json& report);

}  // namespace curvlab::cli
