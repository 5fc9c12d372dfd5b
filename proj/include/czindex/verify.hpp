#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "czindex/forms.hpp"

namespace czindex {

enum class Suite { Forms, Lagr, Maslov, Cayley, Product, Iterate, Metaplectic, All };

std::optional<Suite> suiteFromName(const std::string& name);
const char* suiteName(Suite suite);

struct InvariantResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  std::string firstCounterexample;
  bool passed() const { return failures == 0; }
};

struct SuiteResult {
  std::vector<InvariantResult> invariants;
  bool allPassed() const {
    for (const auto& r : invariants)
      if (!r.passed()) return false;
    return true;
  }
};

/// Runs the randomized invariant battery of a suite. Per-trial generators are
/// derived from (seed, trial index), and results are merged by trial index,
/// so the outcome is independent of the worker count.
SuiteResult runSuite(Suite suite, std::uint64_t seed, int trials, SignConvention conv,
                     const ToleranceContext& tol = {}, int threads = 0);

}  // namespace czindex
