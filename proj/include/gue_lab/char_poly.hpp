#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gue_lab/gue_sampler.hpp"
#include "gue_lab/quadrature.hpp"

namespace gue_lab {

/// Mesoscopic window: reference point x0, regularizer eta and zoom d_N = N^alpha.
struct MesoscopicConfig {
    double x0 = 0.0;
    double eta = 1.0;
    double alpha = 0.5;

    /// Throws std::invalid_argument unless |x0| < 1, eta > 0, 0 < alpha < 1.
    static MesoscopicConfig make(double x0, double eta, double alpha);
    void validate() const;

    [[nodiscard]] double zoom(std::size_t n) const;
};

/// x coincided with an eigenvalue in log_abs_charpoly.
class SingularInputError : public std::domain_error {
public:
    SingularInputError(const std::string& what, std::size_t index)
        : std::domain_error(what + " (eigenvalue index " + std::to_string(index) + ")"), index_(index) {}
    [[nodiscard]] std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

inline constexpr double kCollisionGuard = 1e-13;

/// D_N(x) = -sum_j log|x_j - x|.
double log_abs_charpoly(const EigenvalueSample& sample, double x);

/// W_N(tau) = 1/2 sum_j [log((x_j-x0)^2 + e^2) - log((x_j-x0+tau/d)^2 + e^2)],
/// e = eta/d, d = N^alpha. Exactly zero at tau = 0.
double meso_increment(const EigenvalueSample& sample, const MesoscopicConfig& cfg, double tau);

/// W_N at several times in one pass over the spectrum.
std::vector<double> meso_path(const EigenvalueSample& sample, const MesoscopicConfig& cfg,
                              std::span<const double> taus);

/// T_n(x) by the three-term recurrence, any real x.
double chebyshev_T(int n, double x);

/// sum_j T_n(x_j) by the three-term recurrence.
double chebyshev_trace(const EigenvalueSample& sample, int n);

/// sum_j T_k(x_j) for k = 0..n_max.
std::vector<double> chebyshev_traces(const EigenvalueSample& sample, int n_max);

/// a_{n,N} = (2/sqrt n) Tr T_n(H), n >= 1.
double chebyshev_a_coefficient(const EigenvalueSample& sample, int n);

/// Chebyshev-Fourier coefficients of D_N with the constant N log 2 held apart.
struct ChebCoeffSeries {
    int k_max = 0;
    std::vector<double> c;
    double n_log2_term = 0.0;

    /// N log 2 + sum_{k <= k_max} c_k T_k(x), by Clenshaw summation.
    [[nodiscard]] double evaluate(double x) const;
};

/// Coefficients including the corrections from eigenvalues outside [-1, 1].
ChebCoeffSeries cheb_fourier_coeffs(const EigenvalueSample& sample, int k_max);

/// Edge-correction terms r_k^{+-}(x) (zero unless +-x > 1), k >= 0.
double edge_correction(int k, double x, int side);

/// Smooth bump xi(s) = A exp(1 - 1/(1-u^2)), u = (s - center)/half_width.
struct TestFunction {
    double center = 2.0;
    double half_width = 1.0;
    double amplitude = 1.0;

    static TestFunction make(double center, double half_width, double amplitude = 1.0);
    void validate() const;

    [[nodiscard]] double operator()(double s) const;
    [[nodiscard]] double support_lo() const { return center - half_width; }
    [[nodiscard]] double support_hi() const { return center + half_width; }
    [[nodiscard]] TestFunction scaled(double a) const { return {center, half_width, amplitude * a}; }
};

TestFunction default_bump();

/// int xi_1(s) xi_2(s) ds.
double bump_inner_product(const TestFunction& a, const TestFunction& b);

/// f(x) = int xi(s) s^{-1/2} e^{-isx} ds, adaptive; throws QuadratureError
/// if abs_tol is not reached.
std::complex<double> bump_transform(const TestFunction& xi, double x, double abs_tol = 1e-9);

/// f tabulated on a fixed composite Gauss-Legendre rule, checked against the
/// adaptive transform for |x| <= x_max at construction.
class SmearedTransform {
public:
    SmearedTransform(const TestFunction& xi, double x_max, double abs_tol = 1e-9);

    [[nodiscard]] std::complex<double> operator()(double x) const;
    [[nodiscard]] const TestFunction& bump() const { return xi_; }
    [[nodiscard]] std::size_t nodes() const { return s_.size(); }

private:
    TestFunction xi_;
    std::vector<double> s_;
    std::vector<double> w_;
};

/// b_N(s) = s^{-1/2} sum_j exp(-i s d (x_j - x0)).
std::complex<double> fourier_coeff_b(const EigenvalueSample& sample, const MesoscopicConfig& cfg, double s);

struct SmearedCoeff {
    std::complex<double> value;           ///< sum_j f(d(x_j - x0))
    std::complex<double> integral_route;  ///< int xi(s) b_N(s) ds
    double route_gap = 0.0;
};

/// c_N(xi) by both routes; `value` is the eigenvalue-sum route.
SmearedCoeff smeared_coeff_c(const EigenvalueSample& sample, const MesoscopicConfig& cfg,
                             const TestFunction& xi);

/// Eigenvalue-sum route with a precomputed transform (Monte Carlo inner loop).
std::complex<double> smeared_coeff_c(const EigenvalueSample& sample, const MesoscopicConfig& cfg,
                                     const SmearedTransform& f);

}  // namespace gue_lab
