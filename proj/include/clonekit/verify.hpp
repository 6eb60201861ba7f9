#pragma once

// Invariant suite run by `clonekit verify`: each check recomputes a property
// of one module through an independent route.

#include <cstdint>
#include <string>
#include <vector>

namespace clonekit::verify {

struct CheckResult {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckResult> run_all(std::uint64_t seed = 0);

}  // namespace clonekit::verify
