#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace gue_lab {

/// psi_l^(N)(x) = (2N)^{1/4} h_l(sqrt(2N) x), h_l the orthonormal Hermite
/// functions. Orthonormal in dx for the weight exp(-2N x^2). Requires
/// 0 <= l <= 100000.
double hermite_psi(std::size_t n_matrix, std::size_t l, double x);

/// psi_0..psi_{l_max} at x in one recurrence pass.
std::vector<double> hermite_psi_all(std::size_t n_matrix, std::size_t l_max, double x);

/// Christoffel-Darboux kernel K_N(x, y) = sum_{l<N} psi_l(x) psi_l(y).
class KernelEvaluator {
public:
    static constexpr double kConfluentThreshold = 1e-7;

    explicit KernelEvaluator(std::size_t n_matrix);

    /// psi_{N-2}, psi_{N-1}, psi_N, psi_{N+1} at one point; enough for both
    /// the ratio and the confluent form.
    struct Row {
        double x = 0.0;
        double psi[4] = {0.0, 0.0, 0.0, 0.0};
    };

    [[nodiscard]] std::size_t n() const { return n_; }
    [[nodiscard]] Row row(double x) const;
    [[nodiscard]] double kernel(const Row& a, const Row& b) const;
    [[nodiscard]] double kernel(double x, double y) const { return kernel(row(x), row(y)); }
    [[nodiscard]] double diagonal(const Row& a) const;

private:
    std::size_t n_;
    double scale_;  // sqrt(2N)
};

double kernel_K(const KernelEvaluator& ev, double x1, double x2);

/// rho_N(x) = K_N(x, x) / N.
double density_rho(const KernelEvaluator& ev, double x);

struct OracleQuadSpec {
    double margin = 0.5;  ///< minimum; the box [-1 - margin, 1 + margin] widens until the tail mass is < 1e-15
    double rel_tol = 1e-7;
    double abs_tol = 1e-12;
    int order = 16;
    int initial_panels = 8;
    int max_panels = 512;
    bool parallel = true;
};

struct OracleResult {
    double value = 0.0;
    double error_estimate = 0.0;
    /// N times the density mass outside the box; bounds the truncation error
    /// for bounded test functions up to sup|f| factors.
    double tail_bound = 0.0;
    int panels = 0;
};

using RealFunction = std::function<double(double)>;

/// Cov(sum f1(x_j), sum f2(x_j)) = 1/2 iint (f1(x)-f1(y))(f2(x)-f2(y)) K_N(x,y)^2 dx dy.
/// Throws QuadratureError when rel_tol is not met within max_panels.
OracleResult exact_linear_stat_cov(const KernelEvaluator& ev, const RealFunction& f1, const RealFunction& f2,
                                   const OracleQuadSpec& spec = {});

/// E sum f(x_j) = N int f rho_N.
OracleResult exact_linear_stat_mean(const KernelEvaluator& ev, const RealFunction& f,
                                    const OracleQuadSpec& spec = {});

}  // namespace gue_lab
