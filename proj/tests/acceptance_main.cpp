#include <cwac/acceptance.hpp>

#include <cstdio>

// Prints one verdict line per acceptance criterion and exits nonzero when
// any of them fails.  The same checks back the `cwac selftest` command.
int main() {
    int failed = 0;
    for (const cwac::CriterionResult& r : cwac::run_acceptance()) {
        std::printf("%s  %2d  %-40s (%.2fs)\n      %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds, r.detail.c_str());
        failed += r.pass ? 0 : 1;
    }
    if (failed != 0) {
        std::printf("%d criteria FAILED\n", failed);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
