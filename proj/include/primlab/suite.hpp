#pragma once

// The acceptance battery: one entry per top-level claim the artifact
// certifies, runnable at three scales.  Shared by the CLI `suite`
// subcommand and the standalone acceptance runner so both report from the
// same implementation.

#include <cstdint>
#include <string>
#include <vector>

#include "primlab/arith.hpp"

namespace primlab {

enum class SuiteLevel { smoke, desk, extended };

SuiteLevel parse_suite_level(const std::string& name);  // throws std::invalid_argument
const char* suite_level_name(SuiteLevel level);

// Minimum sieve limit needed to run the battery at a level.
std::uint64_t suite_required_sieve(SuiteLevel level);

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    // True when this level cannot exercise the full desk-scale claim and a
    // reduced check was substituted (reduced checks still gate `pass`).
    bool scale_limited = false;
    std::string detail;
};

// Runs acceptance criterion `id` (1..9).  The sieve must satisfy
// suite_required_sieve(level).
CriterionResult run_criterion(const FactorSieve& sieve, int id, SuiteLevel level,
                              int threads = 1);

std::vector<CriterionResult> run_suite(const FactorSieve& sieve, SuiteLevel level,
                                       int threads = 1);

}  // namespace primlab
