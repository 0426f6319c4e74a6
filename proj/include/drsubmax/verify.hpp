#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace drsubmax {

// One named property check: randomized cross-validation of a module against
// an independent reference (vertex enumeration, finite differences, grids,
// Monte Carlo), with a human-readable measurement in detail.
struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;

    bool all_passed() const;
};

// simplex vs. exhaustive vertex enumeration, infeasibility, determinism
SuiteResult verify_lp(uint64_t seed);

// interior ball, linear oracle, shrink sandwich, minimum-norm point
SuiteResult verify_geometry(uint64_t seed);

// gradients vs. finite differences, sphere sampler moments, smoothing
// identity, one-point gradient estimator bias
SuiteResult verify_estimators(uint64_t seed);

// offline ascent against its per-case guarantee on brute-forced instances
SuiteResult verify_offline(uint64_t seed);

const std::vector<std::string>& verify_suite_names();

// Dispatch by suite name; throws ConfigError for an unknown name.
SuiteResult run_suite(const std::string& name, uint64_t seed);

std::vector<SuiteResult> verify_all(uint64_t seed);

}  // namespace drsubmax
