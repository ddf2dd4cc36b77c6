#pragma once

#include <stdexcept>
#include <string>

namespace molcoop {

/// Raised when an argument violates a physical or statistical precondition
/// (non-positive distance, zero-signal detector, empty branch list, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the configuration layer. Carries the JSON key path that failed.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key_path, const std::string& message)
      : std::runtime_error(key_path + ": " + message), key_path_(std::move(key_path)) {}

  const std::string& key_path() const noexcept { return key_path_; }

 private:
  std::string key_path_;
};

}  // namespace molcoop
