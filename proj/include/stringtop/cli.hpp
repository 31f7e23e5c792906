#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace stringtop::cli {

enum ExitCode : int { kOk = 0, kVerdictFail = 1, kUsage = 2, kTruncation = 3 };

struct CommandOptions {
  std::string command;
  std::filesystem::path input;
  std::optional<int> max_degree;
  int copies = 2;
  std::optional<int> expected_d;
};

struct CommandResult {
  int exit_code = kOk;
  /// Plain-text report for stdout.
  std::string text;
  /// Error message for stderr, empty on success.
  std::string error;
  nlohmann::json document;
};

const std::vector<std::string>& command_names();

/// Runs one command; never throws for input or truncation problems, which
/// are reported through the exit code.
CommandResult run_command(const CommandOptions& options);

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace stringtop::cli
