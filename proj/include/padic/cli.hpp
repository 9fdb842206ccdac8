#pragma once

#include "padic/io.hpp"

#include <optional>
#include <string>

namespace padic {

struct CliOptions {
  std::optional<std::uint64_t> prime;
  std::optional<int> trunc;
  std::optional<Rational> eta_exp;
  std::optional<Rational> rho_exp;
  std::optional<int> budget;
  std::optional<std::string> json_out;
};

enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitMathFailure = 2 };

struct CommandResult {
  int exit_code = kExitOk;
  json report;
};

const std::vector<std::string>& command_names();

/// Parses the file and runs one analysis. Never throws for bad input: format
/// and usage problems give exit code 1, mathematical failures exit code 2
/// with a certificate in the report.
CommandResult run_command(const std::string& command, const std::string& path, const CliOptions& options);

/// Same on an already parsed problem.
CommandResult run_command(const std::string& command, ProblemFile problem, const CliOptions& options);

/// Line-oriented "KEY: value" rendering of a report.
std::string text_report(const json& report);

}  // namespace padic
