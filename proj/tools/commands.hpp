#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace gue_lab::cli {

/// Rejected before any compute; maps to exit code 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string subcommand;
    std::optional<std::size_t> n;
    std::optional<std::size_t> reps;
    std::optional<int> kmax;
    std::uint64_t seed = 7;
    double alpha = 0.5;
    double eta = 1.0;
    double x0 = 0.0;
    std::filesystem::path out = "gue_lab_out";
    std::string format = "csv";
    bool gnuplot = false;
    bool parallel = true;

    /// Throws ConfigError on any value the chosen subcommand cannot use.
    void validate() const;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitBadConfig = 2;

/// Runs the subcommand; returns kExitOk or kExitVerificationFailed.
int run_command(const RunConfig& cfg);

}  // namespace gue_lab::cli
