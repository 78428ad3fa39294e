#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gue_lab/stat_harness.hpp"

namespace gue_lab {

/// One pass/fail line inside a criterion. `relation` is "abs_diff" for
/// |estimated - predicted| <= tolerance, "less" for estimated < tolerance and
/// "greater" for estimated > tolerance.
struct Check {
    std::string name;
    std::string relation = "abs_diff";
    double predicted = 0.0;
    double estimated = 0.0;
    double se = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

Check from_report(const VerificationReport& rep);
Check less_than(std::string name, double value, double bound);
Check greater_than(std::string name, double value, double bound);

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::size_t replicates = 0;
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;
    std::vector<Check> checks;
    std::vector<std::string> notes;
};

struct SuiteOptions {
    std::uint64_t seed = 7;
    /// Replaces every Monte Carlo replicate count when set.
    std::optional<std::size_t> reps;
    bool parallel = true;
};

inline constexpr int kCriterionCount = 10;

/// Independent seed for sub-experiment `index` of criterion `id`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t id, std::uint64_t index = 0);

CriterionResult run_criterion(int id, const SuiteOptions& opt);
std::vector<CriterionResult> run_suite(const SuiteOptions& opt);

}  // namespace gue_lab
