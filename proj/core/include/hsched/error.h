#pragma once

#include <stdexcept>
#include <string>

namespace hsched {

// Invalid user-supplied configuration. `key()` names the offending entry
// (dotted path for JSON configs, flag name for command line input).
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::invalid_argument(key.empty() ? message : key + ": " + message),
        key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

// The iteration budget cannot cover the mandatory slots.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hsched
