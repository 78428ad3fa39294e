#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gue_lab/rng.hpp"

namespace gue_lab {

/// Compensated (Neumaier) summation.
class NeumaierSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    [[nodiscard]] double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// One Monte Carlo experiment: a named vector-valued statistic of one
/// replicate's random stream.
struct Experiment {
    std::string name;
    std::vector<std::string> columns;
    std::function<std::vector<double>(StreamTag)> statistic;
};

struct RunOptions {
    bool parallel = true;
    int threads = 0;  ///< 0 keeps the OpenMP default
};

/// A replicate threw; carries the smallest failing replicate index.
class ReplicateError : public std::runtime_error {
public:
    ReplicateError(const std::string& experiment, std::uint64_t replicate, const std::string& cause)
        : std::runtime_error("experiment '" + experiment + "' failed at replicate " + std::to_string(replicate) +
                             ": " + cause),
          replicate_(replicate) {}
    [[nodiscard]] std::uint64_t replicate() const { return replicate_; }

private:
    std::uint64_t replicate_;
};

/// Replicate table plus moment estimators. Row r holds replicate r.
class SampleStats {
public:
    SampleStats(std::vector<std::string> columns, Eigen::MatrixXd data, std::uint64_t seed);

    [[nodiscard]] std::size_t replicates() const { return static_cast<std::size_t>(data_.rows()); }
    [[nodiscard]] std::size_t dims() const { return static_cast<std::size_t>(data_.cols()); }
    [[nodiscard]] const std::vector<std::string>& columns() const { return columns_; }
    [[nodiscard]] std::size_t column_index(const std::string& name) const;
    [[nodiscard]] const Eigen::MatrixXd& data() const { return data_; }
    [[nodiscard]] std::vector<double> column(std::size_t i) const;
    [[nodiscard]] std::uint64_t seed() const { return seed_; }

    [[nodiscard]] double mean(std::size_t i) const { return mean_[i]; }
    [[nodiscard]] double se_mean(std::size_t i) const;
    /// Unbiased sample covariance.
    [[nodiscard]] double covariance(std::size_t i, std::size_t j) const { return cov_(i, j); }
    [[nodiscard]] double variance(std::size_t i) const { return cov_(i, i); }
    /// Plug-in standard error of the sample covariance,
    /// sqrt((E[(X-mx)^2 (Y-my)^2] - cov^2) / R).
    [[nodiscard]] double se_covariance(std::size_t i, std::size_t j) const;
    [[nodiscard]] double correlation(std::size_t i, std::size_t j) const;
    /// se_covariance scaled by the two sample standard deviations.
    [[nodiscard]] double se_correlation(std::size_t i, std::size_t j) const;
    [[nodiscard]] const Eigen::MatrixXd& covariance_matrix() const { return cov_; }

private:
    std::vector<std::string> columns_;
    Eigen::MatrixXd data_;
    std::uint64_t seed_;
    std::vector<double> mean_;
    Eigen::MatrixXd cov_;
};

/// Runs replicates 0..R-1 with streams (seed, r). Results land in fixed slots
/// and are aggregated serially, so aggregates do not depend on thread count.
SampleStats run_replicated(const Experiment& exp, std::size_t replicates, std::uint64_t seed,
                           const RunOptions& opt = {});

struct KsResult {
    double statistic = 0.0;
    double p_value = 0.0;
};

/// Kolmogorov survival function Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} e^{-2k^2 lambda^2}.
double kolmogorov_q(double lambda);

/// One-sample KS against N(0,1) after studentization. Needs >= 100 samples
/// and positive variance.
KsResult ks_normality(std::span<const double> samples);

/// Two-sample KS with the asymptotic p-value.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Two-sided standard-normal critical value for m simultaneous tests at
/// family-wise level alpha, never below `minimum`.
double bonferroni_k(std::size_t m, double alpha = 0.01, double minimum = 3.0);

struct ToleranceRule {
    double k = 3.0;
    double floor = 0.0;

    [[nodiscard]] double tolerance(double se) const { return std::max(k * se, floor); }
};

struct VerificationReport {
    std::string name;
    double predicted = 0.0;
    double estimated = 0.0;
    double se = 0.0;
    ToleranceRule rule;
    double tolerance = 0.0;
    bool pass = false;
    std::uint64_t seed = 0;
    std::size_t replicates = 0;
    double wall_seconds = 0.0;
};

/// pass iff |estimated - predicted| <= max(k se, floor).
VerificationReport compare(std::string name, double predicted, double estimated, double se, ToleranceRule rule);

/// Compares the mean of one SampleStats column.
VerificationReport compare(std::string name, double predicted, const SampleStats& stats, std::size_t column,
                           ToleranceRule rule);

}  // namespace gue_lab
