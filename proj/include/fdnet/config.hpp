#pragma once

#include <stdexcept>
#include <string>

#include "fdnet/harness.hpp"

namespace fdnet {

// Parse or validation failure; line is 1-based, 0 when the error is not tied
// to a specific line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                          message
                                    : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Parses the sectioned key/value experiment format:
//
//   # comment
//   [experiment]
//   kind = mimo_selection
//   sweep_values = 3 4 5
//
// Unknown sections or keys, malformed values, and semantically invalid
// combinations (e.g. unordered sweep values) raise ConfigError. Omitted keys
// keep their defaults.
ExperimentConfig parse_config(const std::string& text);

// Renders a config back to the sectioned text format; parse_config of the
// output reproduces the config exactly.
std::string serialize_config(const ExperimentConfig& cfg);

// Semantic checks shared by parse_config and the CLI (ranges, sweep/kind
// compatibility). Throws ConfigError on violation.
void validate_config(const ExperimentConfig& cfg);

}  // namespace fdnet
