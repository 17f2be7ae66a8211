// Runs every acceptance criterion and prints one line per criterion.
// Exit status is non-zero when any criterion fails.

#include <cstdio>

#include "cyclotrace/cli/verify.hpp"

int main() {
    using namespace cyclotrace;
    using namespace cyclotrace::cli;
    PrecisionContext ctx(256);
    int failed = 0;
    double total = 0;
    for (const Criterion& c : criteria()) {
        CriterionReport r = run_criterion(c);
        total += r.seconds;
        failed += !r.outcome.passed;
        std::printf("[%s] %2d %-14s residual %-12.4g tol %-8.2g %7.2fs  %s\n", r.outcome.passed ? "PASS" : "FAIL", r.id,
                    r.suite.c_str(), r.outcome.residual, r.outcome.tolerance, r.seconds,
                    r.error.empty() ? r.outcome.detail.c_str() : ("threw: " + r.error).c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed in %.1fs\n", int(criteria().size()) - failed, criteria().size(), total);
    return failed ? 1 : 0;
}
