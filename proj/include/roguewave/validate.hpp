#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace roguewave {

struct CheckResult {
  enum class Kind { Within, AtLeast };

  std::string name;
  Kind kind = Kind::Within;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;  // Within only
  bool passed = false;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  [[nodiscard]] bool passed() const noexcept;
  [[nodiscard]] const CheckResult* find(const std::string& name) const noexcept;
  [[nodiscard]] nlohmann::json to_json() const;
};

struct ValidationOptions {
  std::uint64_t seed = 7;
  unsigned workers = 0;
  // Name of a check whose measurement is corrupted, to prove the harness can
  // fail. Empty in normal use.
  std::string inject_fault;
};

// Analytic self-checks: mean intensity against the closed form at rho = 0,
// pair correlation and variance of the phase transform, direct against
// expanded intensity, batched kernel against the direct sum, and the
// discrete-law moments.
ValidationReport run_validation(const ValidationOptions& options = {});

}  // namespace roguewave
