#pragma once

#include <stdexcept>
#include <string>

namespace roguewave {

// Invalid argument to a library call (bad count, mismatched lengths, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation, e.g. |rho| > 1.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Statistic undefined for the given sample (zero variance, too few points).
class DegenerateInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Non-finite or otherwise corrupt data values.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A sweep could not allocate its working set; no partial result is produced.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Command-line or config-file problem. `key()` names the offending option.
class UsageError : public std::invalid_argument {
 public:
  UsageError(std::string key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}

  [[nodiscard]] const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace roguewave
