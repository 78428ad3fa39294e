#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gue_lab/char_poly.hpp"

namespace gue_lab {

using cplx = std::complex<double>;

/// log of the large-N product formula for E exp(-sum alpha_k D_N(x_k)),
/// without the error factor. Points distinct in (-1, 1), alpha_k > -1.
double log_krasovsky_mgf(std::span<const double> points, std::span<const double> alphas, double n);
double krasovsky_mgf(std::span<const double> points, std::span<const double> alphas, double n);

/// Var D_N(x) implied by the product formula:
/// 1/2 log N + 1/4 log(1 - x^2) + (log C)''(0)/4.
double krasovsky_variance(double x, double n);

/// g(z) = int_{-1}^{1} log(z - s) (2/pi) sqrt(1 - s^2) ds for z off (-inf, 1],
/// by Gauss-Jacobi quadrature refined until two rules agree to 1e-14.
cplx g_function(cplx z);

/// c(z) = z + sqrt(z - 1) sqrt(z + 1), principal branches; z off [-1, 1].
cplx conformal_c(cplx z);

/// Points z_k with exponents alpha_k for the Szego machinery.
struct SingularitySet {
    std::vector<cplx> points;
    std::vector<double> alphas;
    bool cyclic = false;

    /// Validates Im z_k != 0 and, when cyclic, sum alpha = 0 within 1e-12.
    static SingularitySet make(std::vector<cplx> points, std::vector<double> alphas, bool cyclic);
    /// z_k = x0 + (tau_k + i eta)/d for the given taus, plus z_m = x0 + i eta/d
    /// carrying alpha_m = -sum alpha_k.
    static SingularitySet mesoscopic(const MesoscopicConfig& cfg, double d, std::span<const double> taus,
                                     std::span<const double> alphas);

    [[nodiscard]] std::size_t size() const { return points.size(); }
};

/// D(z) = prod_k ((|c_k|/2)(1 - 1/(c_k c(z)))(1 - 1/(conj(c_k) c(z))))^{alpha_k/2}.
cplx szego_D(cplx z, const SingularitySet& s);
/// D as a function of w = c(z); boundary values on (-1, 1) use
/// w = x +- i sqrt(1 - x^2).
cplx szego_D_of_c(cplx w, const SingularitySet& s);
double szego_D_infinity(const SingularitySet& s);
double szego_D1(const SingularitySet& s);
double szego_D2(const SingularitySet& s);
/// omega(x) = prod_k |x - z_k|^{alpha_k}.
double szego_weight(double x, const SingularitySet& s);

/// C(mu, z) = 1/2 log((|c(mu)|/2)(1 - 1/(c(mu) c(z)))(1 - 1/(conj c(mu) c(z)))).
cplx C_of(cplx mu, cplx z);

struct MesoPrediction {
    double mean_term = 0.0;       ///< N sum alpha_k (Re g(z_k) - Re g(z_m))
    double quadratic_form = 0.0;  ///< 1/2 sum alpha_k alpha_j cov_B0(tau_k, tau_j)
    std::vector<double> means;    ///< N (Re g(z_k) - Re g(z_m)) per tau_k
    Eigen::MatrixXd covariance;   ///< cov_B0(tau_k, tau_j)
};

/// Leading terms of the log characteristic function of the mesoscopic
/// increments at times taus with exponents alphas (alpha_m implied).
MesoPrediction meso_charfunc_prediction(const MesoscopicConfig& cfg, std::span<const double> taus,
                                        std::span<const double> alphas, std::size_t n);

/// Predicted E W_N(tau) for meso_increment as implemented:
/// -N (Re g(x0 + (-tau + i eta)/d) - Re g(x0 + i eta/d)).
double predicted_mean_w(const MesoscopicConfig& cfg, double tau, std::size_t n);

struct SzegoDecayReport {
    std::vector<double> d_values;
    std::vector<double> errors;
    double slope = 0.0;
    double intercept = 0.0;
    double target = 0.0;  ///< 1/4 log((tau_j - tau_k)^2 + 4 eta^2)
};

/// err(d) = |Re C(z_j, z_k) + 1/2 log d - target| with z = x0 + (tau + i eta)/d,
/// and the least-squares slope of log err against log d.
SzegoDecayReport verify_szego_asymptotic(double tau_j, double tau_k, double eta, std::span<const double> d_values,
                                         double x0 = 0.0);

/// |Cesaro mean of the partial sums of sum (2/n) T_n(x) T_n(y) + log(2|x - y|)|.
double verify_log_chebyshev_identity(double x, double y, int n_max);

/// int_0^inf e^{-eps s} (1 - cos ts)/s ds - 1/2 log(t^2/eps^2 + 1), by
/// adaptive quadrature on [0, 40/eps].
double verify_log_integral_identity(double t, double eps);

/// The same with a fixed number of 20-point panels, for refinement studies.
double log_integral_identity_error(double t, double eps, int panels);

}  // namespace gue_lab
