#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace harness {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// Quick end-to-end checks through the C API: reference identities, the T1
/// table, ODE against the explicit solution, sampler law, the fig1-fig4
/// regimes and the giant-particle law. fig5 only with include_slow.
std::vector<CheckResult> run_selftest(bool include_slow, std::uint64_t seed, std::size_t replicas);

/// Prints one "PASS"/"FAIL" line per check; returns true if all passed.
bool print_checks(std::ostream& out, const std::vector<CheckResult>& checks);

}  // namespace harness
