#pragma once

#include "drm/reconstruction.hpp"

#include <cstdint>
#include <string>
#include <vector>

// Verification suites over a tower of DR levels. Each suite runs a set of
// named checks and reports pass/fail with a witness string on failure.

namespace drm {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string witness;
};

struct SuiteReport {
  std::string suite;
  std::string field;
  std::vector<i64> conductor_norms;
  std::vector<CheckResult> checks;
  bool pass() const;
};

// suite in {idempotents, omega, local, sigma, reciprocity, u1, transitions,
// all}; unknown names throw std::invalid_argument.
SuiteReport run_suite(const std::string& suite, const FieldData& K,
                      const std::vector<IdealHNF>& conductors, uint64_t seed,
                      const Caps& caps = {});

std::vector<std::string> suite_names();

} // namespace drm
