// Acceptance battery runner.  Usage:
//   acceptance [criterion-id] [--level smoke|desk|extended]
// With no id it runs all nine criteria.  Prints one [PASS]/[FAIL] line per
// criterion and exits nonzero if any executed criterion failed.

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "primlab/arith.hpp"
#include "primlab/suite.hpp"

int main(int argc, char** argv) {
    using namespace primlab;

    int only_id = 0;
    SuiteLevel level = SuiteLevel::desk;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--level") == 0 && i + 1 < argc) {
            try {
                level = parse_suite_level(argv[++i]);
            } catch (const std::exception& e) {
                std::fprintf(stderr, "%s\n", e.what());
                return 2;
            }
        } else {
            only_id = std::atoi(argv[i]);
            if (only_id < 1 || only_id > 9) {
                std::fprintf(stderr, "criterion id must be 1..9\n");
                return 2;
            }
        }
    }

    const FactorSieve sieve = build_sieve(suite_required_sieve(level));
    std::vector<int> ids;
    if (only_id)
        ids.push_back(only_id);
    else
        for (int id = 1; id <= 9; ++id) ids.push_back(id);

    bool all_pass = true;
    for (int id : ids) {
        const CriterionResult r = run_criterion(sieve, id, level);
        std::printf("[%s] criterion %d (%s)%s: %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.scale_limited ? " [scale-limited]" : "",
                    r.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}
