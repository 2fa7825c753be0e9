#pragma once

#include <string>
#include <vector>

namespace intricacy {

struct PropertyResult {
  std::string suite;
  std::string property;
  long passed = 0;
  long total = 0;
  std::string first_failure;

  bool ok() const { return passed == total; }
};

struct CheckReport {
  std::vector<PropertyResult> results;
  bool passed() const;
};

/// Suite names accepted by run_checks, besides "all".
const std::vector<std::string>& check_suites();

/// Runs one suite (or "all"). max_n bounds the subset horizons; each suite
/// also applies its own ceiling (10 for counts, 8 for joint entropies).
CheckReport run_checks(const std::string& suite, int max_n, int threads = 0);

}  // namespace intricacy
