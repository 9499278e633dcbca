// Acceptance suite: runs every reproduction check at its pinned tolerance
// and prints one line per criterion. Exits nonzero if any criterion fails.

#include <cstdio>
#include <map>
#include <vector>

#include "qnest/verification.hpp"

int main() {
    const std::vector<qnest::CheckResult> results = qnest::run_verification();

    struct Tally {
        bool passed = true;
        double worst_margin = 1e300; // tolerance - measured, smallest is tightest
        const qnest::CheckResult* tightest = nullptr;
    };
    std::map<int, Tally> tallies;
    for (const auto& r : results) {
        Tally& t = tallies[r.criterion];
        t.passed = t.passed && r.passed;
        const double margin = r.tolerance - r.measured;
        if (margin < t.worst_margin) {
            t.worst_margin = margin;
            t.tightest = &r;
        }
    }

    int failures = 0;
    for (const auto& [criterion, tally] : tallies) {
        if (!tally.passed) ++failures;
        std::printf("[%s] criterion %d: %s (tightest: %s, residual %.3e, tol %.1e)\n",
                    tally.passed ? "PASS" : "FAIL", criterion,
                    qnest::criterion_label(criterion), tally.tightest->name.c_str(),
                    tally.tightest->measured, tally.tightest->tolerance);
        if (!tally.passed) {
            for (const auto& r : results) {
                if (r.criterion == criterion && !r.passed) {
                    std::printf("       failed: %s, residual %.3e exceeds tol %.1e\n",
                                r.name.c_str(), r.measured, r.tolerance);
                }
            }
        }
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(tallies.size()) - failures,
                tallies.size());
    return failures;
}
