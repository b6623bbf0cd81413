#pragma once

#include <string>
#include <vector>

namespace prelie {

/// Outcome of one command invocation: the report text (deterministic,
/// UTF-8, LF line endings) and the exit status. Status 0 on success, 1 on
/// validation failure or errors, 2 on window-insufficiency diagnostics.
struct CliResult {
  int status = 0;
  std::string report;
};

CliResult cli_run(const std::vector<std::string>& args);

}  // namespace prelie
