#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace pasym {

enum class CheckStatus { Pass, Warn, Fail };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

struct SelftestOptions {
  /// Grid points per axis for the field-level checks.
  std::size_t points = 512;
  /// "g-alpha-moment" corrupts the closed-form moment table.
  std::string inject_fault;
};

/// Below this resolution, resolution-sensitive checks report a warning
/// instead of a failure.
inline constexpr std::size_t kSelftestReferencePoints = 256;

std::vector<CheckResult> run_selftest(const SelftestOptions& options = {});

/// Prints one line per check; returns 0 when nothing failed.
int report_selftest(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace pasym
