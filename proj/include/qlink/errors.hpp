#pragma once

#include <stdexcept>
#include <string>

namespace qlink {

// Parameter outside the mathematical domain of a model (CLI exit status 1).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Malformed request: bad flag combination, empty grid, too few trials (CLI exit status 2).
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Invalid cipher configuration, e.g. a seed key shorter than 16 bits.
class ConfigError : public UsageError {
 public:
  explicit ConfigError(const std::string& what) : UsageError(what) {}
};

}  // namespace qlink
