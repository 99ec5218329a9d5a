#pragma once
// Command-line frontend. run_cli() is the whole program minus process
// plumbing, so tests can drive it in-process.

#include <ostream>
#include <string>
#include <vector>

#include "elliptic_oam/verify.hpp"

namespace elliptic_oam::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
  kNumericalFailure = 3,
};

struct CliHooks {
  // Decomposer used by `verify`; tests swap in a corrupted one.
  Decomposer decomposer = [](const ModeIndex& mode, double eps) { return decompose(mode, eps); };
};

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliHooks& hooks = {});

// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

// Shortest text that still carries 17 significant digits (std::to_chars, general format).
std::string format_double(double value);

}  // namespace elliptic_oam::cli
