#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gue_lab/rng.hpp"

namespace gue_lab {

/// Covariance of the regularized fBm with Hurst index H in (0, 1), i.e.
/// 1/2 int_0^inf e^{-2 eta s} s^{-1-2H} (1 - cos ts) ds. eta = 0 is allowed.
double phi_H(double t, double hurst, double eta);

/// The same integral by quadrature on a graded composite rule (eta > 0).
double phi_H_quadrature(double t, double hurst, double eta);

/// phi0(t) = 1/4 log(t^2/(4 eta^2) + 1), eta > 0.
double phi0(double t, double eta);

/// Cov(B(tau), B(upsilon)) = phi0(tau) + phi0(upsilon) - phi0(tau - upsilon).
double cov_B0(double tau, double upsilon, double eta);

struct CovarianceMatrix {
    std::vector<double> times;
    Eigen::MatrixXd entries;
};

CovarianceMatrix covariance_B0(std::span<const double> times, double eta);

/// Exact Gaussian sampler for B_0^(eta) on a fixed time set. The factor is
/// computed once; coordinates at t = 0 are exactly zero.
class CholeskyB0Sampler {
public:
    CholeskyB0Sampler(std::vector<double> times, double eta);

    [[nodiscard]] std::vector<double> sample(StreamTag tag) const;
    [[nodiscard]] const std::vector<double>& times() const { return times_; }
    /// Diagonal jitter that had to be added (0 if none).
    [[nodiscard]] double jitter() const { return jitter_; }

private:
    std::vector<double> times_;
    std::vector<std::size_t> active_;
    Eigen::MatrixXd lower_;
    double jitter_ = 0.0;
};

std::vector<double> sample_B0_cholesky(std::span<const double> times, double eta, StreamTag tag);

/// Midpoint frequency grid s_k = (k + 1/2) ds, k < count, for the
/// harmonizable representation.
struct HarmonizableGrid {
    double s_max = 0.0;
    double ds = 0.0;
    std::size_t count = 0;

    /// Throws std::invalid_argument unless s_max > 0 and 0 < ds <= s_max.
    /// ds is shrunk so that count * ds == s_max.
    static HarmonizableGrid make(double s_max, double ds);
    /// s_max = 50/eta, ds = pi/(10 T) with T the largest |t| or |t - t'|.
    static HarmonizableGrid defaults(std::span<const double> times, double eta);
};

/// Riemann-sum version of the harmonizable integral. Each node carries an
/// independent standard complex Gaussian increment.
class HarmonizableB0Sampler {
public:
    HarmonizableB0Sampler(std::vector<double> times, double eta, HarmonizableGrid grid);

    [[nodiscard]] std::vector<double> sample(StreamTag tag) const;

    /// Covariance of the discretized process, a deterministic sum.
    [[nodiscard]] Eigen::MatrixXd discrete_covariance() const;
    /// max |discrete_covariance - cov_B0| over the time set.
    [[nodiscard]] double predicted_bias() const { return bias_; }
    /// Non-empty when the grid is coarser than the defaults.
    [[nodiscard]] const std::vector<std::string>& warnings() const { return warnings_; }
    [[nodiscard]] const HarmonizableGrid& grid() const { return grid_; }

    /// Serial and OpenMP variants of the per-draw kernel; results identical.
    void sample_many(std::uint64_t seed, std::size_t first, std::size_t count, Eigen::MatrixXd& out,
                     bool parallel) const;

private:
    std::vector<double> times_;
    double eta_;
    HarmonizableGrid grid_;
    // Real and imaginary parts of (e^{-i t s_k} - 1) * w_k per time.
    Eigen::MatrixXd re_;
    Eigen::MatrixXd im_;
    double bias_ = 0.0;
    std::vector<std::string> warnings_;
};

std::vector<double> sample_B0_harmonizable(std::span<const double> times, double eta, const HarmonizableGrid& grid,
                                           StreamTag tag, std::vector<std::string>* warnings = nullptr);

/// F_K(x) = sum_{n <= n_max} a_n n^{-1/2} T_n(x), a_n i.i.d. N(0, 1).
std::vector<double> sample_F_series(std::span<const double> xs, int n_max, StreamTag tag);

/// sum_{n <= n_max} T_n(x) T_n(y) / n.
double F_series_covariance(double x, double y, int n_max);

}  // namespace gue_lab
