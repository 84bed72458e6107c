#ifndef LOGCURVE_CLI_HPP
#define LOGCURVE_CLI_HPP

#include <string>
#include <vector>

#include "logcurve/json_io.hpp"

namespace logcurve::cli {

struct RunResult {
  int exit_code = 0;  // 0 success/PASS, 1 FAIL verdict, 2 input error
  jsonio::Json report;
};

// The dispatch table, in report order.  Batch is a driver, not a command.
const std::vector<std::string>& command_names();

// Executes one command against a normalized options object.  A string-valued
// "input" option is resolved from disk first; the report echoes the command
// and digests the resolved options.  input_error and internal_error are
// converted to error reports with exit code 2, verdict failures to exit 1.
RunResult run_command(const std::string& command,
                      const jsonio::Json& options);

// Runs a manifest, an array of {command, options} objects.  Jobs are
// independent: one job's error is contained in its own report slot.  Exit
// code is 0 only if every job succeeded with a passing verdict.
RunResult run_batch(const jsonio::Json& manifest);

// Argument-vector front end used by the installed binary.
int main_entry(int argc, char** argv);

}  // namespace logcurve::cli

#endif
