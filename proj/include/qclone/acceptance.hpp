// End-to-end verification checks shared by `qclone verify` and the
// acceptance test binary.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qclone {

inline constexpr std::uint64_t kDefaultSeed = 20240517;
inline constexpr int kCriterionCount = 10;

struct CheckResult {
  int id = 0;
  std::string title;
  bool passed = true;
  double residual = 0;   // worst residual among the tolerance-based sub-checks
  double tolerance = 0;  // tolerance that residual was held to
  std::vector<std::string> failures;
};

struct AcceptanceReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;  // informational, never failures

  bool all_passed() const;
};

/// Runs one criterion (1-based id). Informational lines go to `notes`.
CheckResult run_criterion(int id, std::uint64_t seed, std::vector<std::string>& notes);

/// Runs the listed criteria, or all of them when `ids` is empty.
AcceptanceReport run_acceptance(std::uint64_t seed, std::span<const int> ids = {});

void print_report(std::ostream& out, const AcceptanceReport& report);

}  // namespace qclone
