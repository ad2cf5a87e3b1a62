#pragma once

#include <stdexcept>
#include <string>

namespace ccsim {

// Exit codes used by the command line tools.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitOracleMismatch = 2,
  kExitGuardExceeded = 3,
  kExitResourceOrConfig = 4,
};

// Bad parameters, malformed inputs, impossible configurations.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input file could not be parsed; message carries file and line.
class ParseError : public ConfigError {
 public:
  ParseError(const std::string& file, uint64_t line, const std::string& what)
      : ConfigError(file + ":" + std::to_string(line) + ": " + what) {}
  explicit ParseError(const std::string& msg) : ConfigError(msg) {}
};

// Per-cell object memory exhausted or an address failed to resolve.
class StoreError : public std::runtime_error {
 public:
  explicit StoreError(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested design point cannot fit even one cell in the budget.
class InfeasibleDesignError : public std::runtime_error {
 public:
  explicit InfeasibleDesignError(const std::string& msg)
      : std::runtime_error(msg) {}
};

// run_until_quiescent exceeded its cycle guard; message includes a chip dump.
class GuardExceededError : public std::runtime_error {
 public:
  explicit GuardExceededError(const std::string& msg)
      : std::runtime_error(msg) {}
};

// Simulated levels disagree with the reference traversal.
class OracleMismatchError : public std::runtime_error {
 public:
  explicit OracleMismatchError(const std::string& msg)
      : std::runtime_error(msg) {}
};

}  // namespace ccsim
