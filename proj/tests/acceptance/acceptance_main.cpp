// Acceptance gate: one PASS/FAIL line per criterion, exit 1 on any failure.
//
// Usage: gue_lab_acceptance [criterion ...] [--seed S] [--reps R] [--verbose]

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include "gue_lab/experiments.hpp"

int main(int argc, char** argv) {
    gue_lab::SuiteOptions opt;
    std::vector<int> ids;
    bool verbose = false;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--seed" && i + 1 < argc) {
            opt.seed = std::strtoull(argv[++i], nullptr, 10);
        } else if (a == "--reps" && i + 1 < argc) {
            opt.reps = std::strtoull(argv[++i], nullptr, 10);
        } else if (a == "--verbose") {
            verbose = true;
        } else {
            ids.push_back(std::atoi(a.c_str()));
        }
    }
    if (ids.empty()) {
        for (int id = 1; id <= gue_lab::kCriterionCount; ++id) ids.push_back(id);
    }

    int failures = 0;
    for (int id : ids) {
        try {
            const auto res = gue_lab::run_criterion(id, opt);
            std::printf("[%s] criterion %2d: %s (%zu checks, %.1f s)\n", res.pass ? "PASS" : "FAIL", id,
                        res.title.c_str(), res.checks.size(), res.wall_seconds);
            for (const auto& c : res.checks) {
                if (verbose || !c.pass) {
                    std::printf("    %s %s: estimated %.6g, predicted %.6g, se %.3g, tolerance %.3g\n",
                                c.pass ? "ok  " : "FAIL", c.name.c_str(), c.estimated, c.predicted, c.se, c.tolerance);
                }
            }
            for (const auto& n : res.notes) std::printf("    note: %s\n", n.c_str());
            if (!res.pass) ++failures;
        } catch (const std::exception& e) {
            std::printf("[FAIL] criterion %2d: error: %s\n", id, e.what());
            ++failures;
        }
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
