#include "gue_lab/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "gue_lab/limit_processes.hpp"
#include "gue_lab/quadrature.hpp"
#include "gue_lab/special_functions.hpp"

namespace gue_lab {

// ---------------------------------------------------------------------------
// Product formula for the macroscopic MGF

double log_krasovsky_mgf(std::span<const double> points, std::span<const double> alphas, double n) {
    if (points.size() != alphas.size()) throw std::invalid_argument("krasovsky_mgf: points/alphas size mismatch");
    if (!(n > 0.0)) throw std::invalid_argument("krasovsky_mgf: N must be > 0");
    double acc = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
        const double x = points[k];
        const double a = alphas[k];
        if (!(std::abs(x) < 1.0)) throw std::invalid_argument("krasovsky_mgf: points must lie in (-1, 1)");
        if (!(a > -1.0)) throw std::invalid_argument("krasovsky_mgf: need alpha > -1");
        for (std::size_t j = 0; j < k; ++j) {
            if (points[j] == x) throw std::invalid_argument("krasovsky_mgf: coincident points");
        }
        if (a == 0.0) continue;
        acc += log_krasovsky_constant(0.5 * a) + a * a / 8.0 * std::log1p(-x * x) + a * a / 4.0 * std::log(n) +
               0.5 * a * n * (2.0 * x * x - 1.0 - 2.0 * std::numbers::ln2);
    }
    for (std::size_t mu = 0; mu < points.size(); ++mu) {
        for (std::size_t nu = 0; nu < mu; ++nu) {
            acc -= 0.5 * alphas[nu] * alphas[mu] * std::log(2.0 * std::abs(points[nu] - points[mu]));
        }
    }
    return acc;
}

double krasovsky_mgf(std::span<const double> points, std::span<const double> alphas, double n) {
    return std::exp(log_krasovsky_mgf(points, alphas, n));
}

double krasovsky_variance(double x, double n) {
    if (!(std::abs(x) < 1.0)) throw std::invalid_argument("krasovsky_variance: need |x| < 1");
    // (log C)''(0) = 4 log 2 + 2 (1 + gamma).
    return 0.5 * std::log(n) + 0.25 * std::log1p(-x * x) + std::numbers::ln2 +
           0.5 * (1.0 + std::numbers::egamma);
}

// ---------------------------------------------------------------------------
// g-function and the conformal map

namespace {

bool on_segment(cplx z, double left) { return z.imag() == 0.0 && z.real() <= 1.0 && z.real() >= left; }

cplx g_sum(cplx z, int n) {
    const GaussRule rule = gauss_chebyshev_second(n);
    cplx acc{};
    for (std::size_t k = 0; k < rule.size(); ++k) acc += rule.weights[k] * std::log(z - rule.nodes[k]);
    return acc * (2.0 / std::numbers::pi);
}

}  // namespace

cplx g_function(cplx z) {
    if (on_segment(z, -std::numeric_limits<double>::infinity())) {
        throw std::domain_error("g_function: z lies on the branch cut (-inf, 1]");
    }
    int n = 64;
    cplx prev = g_sum(z, n);
    while (n < (1 << 22)) {
        n *= 2;
        const cplx cur = g_sum(z, n);
        if (std::abs(cur - prev) <= 1e-14 * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw QuadratureError("g_function: Gauss-Jacobi rule did not converge", std::abs(prev));
}

cplx conformal_c(cplx z) {
    if (on_segment(z, -1.0)) throw std::domain_error("conformal_c: z lies on [-1, 1]");
    return z + std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
}

// ---------------------------------------------------------------------------
// Szego function

SingularitySet SingularitySet::make(std::vector<cplx> points, std::vector<double> alphas, bool cyclic) {
    if (points.size() != alphas.size()) throw std::invalid_argument("SingularitySet: points/alphas size mismatch");
    for (const auto& z : points) {
        if (z.imag() == 0.0) throw std::invalid_argument("SingularitySet: singularities must be off the real axis");
    }
    if (cyclic) {
        double sum = 0.0;
        for (double a : alphas) sum += a;
        if (std::abs(sum) > 1e-12) throw std::invalid_argument("SingularitySet: cyclic condition sum alpha = 0 violated");
    }
    return SingularitySet{std::move(points), std::move(alphas), cyclic};
}

SingularitySet SingularitySet::mesoscopic(const MesoscopicConfig& cfg, double d, std::span<const double> taus,
                                          std::span<const double> alphas) {
    cfg.validate();
    if (taus.size() != alphas.size()) throw std::invalid_argument("SingularitySet: taus/alphas size mismatch");
    std::vector<cplx> pts;
    std::vector<double> al;
    double sum = 0.0;
    for (std::size_t k = 0; k < taus.size(); ++k) {
        pts.emplace_back(cfg.x0 + taus[k] / d, cfg.eta / d);
        al.push_back(alphas[k]);
        sum += alphas[k];
    }
    pts.emplace_back(cfg.x0, cfg.eta / d);
    al.push_back(-sum);
    return make(std::move(pts), std::move(al), true);
}

cplx szego_D(cplx z, const SingularitySet& s) { return szego_D_of_c(conformal_c(z), s); }

cplx szego_D_of_c(cplx c, const SingularitySet& s) {
    cplx log_d{};
    for (std::size_t k = 0; k < s.size(); ++k) {
        const cplx ck = conformal_c(s.points[k]);
        log_d += 0.5 * s.alphas[k] *
                 (std::log(std::abs(ck) / 2.0) + std::log(1.0 - 1.0 / (ck * c)) + std::log(1.0 - 1.0 / (std::conj(ck) * c)));
    }
    return std::exp(log_d);
}

double szego_D_infinity(const SingularitySet& s) {
    double acc = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) acc += 0.5 * s.alphas[k] * std::log(std::abs(conformal_c(s.points[k])) / 2.0);
    return std::exp(acc);
}

double szego_D1(const SingularitySet& s) {
    double acc = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) acc += s.alphas[k] * (1.0 / conformal_c(s.points[k])).real();
    return -0.5 * acc;
}

double szego_D2(const SingularitySet& s) {
    double acc = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const cplx c = conformal_c(s.points[k]);
        acc += s.alphas[k] * (1.0 / (c * c)).real();
    }
    return -0.125 * acc;
}

double szego_weight(double x, const SingularitySet& s) {
    double acc = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) acc += s.alphas[k] * std::log(std::abs(x - s.points[k]));
    return std::exp(acc);
}

cplx C_of(cplx mu, cplx z) {
    const cplx cm = conformal_c(mu);
    const cplx cz = conformal_c(z);
    return 0.5 * std::log(std::abs(cm) / 2.0 * (1.0 - 1.0 / (cm * cz)) * (1.0 - 1.0 / (std::conj(cm) * cz)));
}

// ---------------------------------------------------------------------------
// Mesoscopic predictions

MesoPrediction meso_charfunc_prediction(const MesoscopicConfig& cfg, std::span<const double> taus,
                                        std::span<const double> alphas, std::size_t n) {
    cfg.validate();
    if (taus.size() != alphas.size()) throw std::invalid_argument("meso_charfunc_prediction: size mismatch");
    const double d = cfg.zoom(n);
    const double nf = static_cast<double>(n);
    const double g_m = g_function(cplx(cfg.x0, cfg.eta / d)).real();

    MesoPrediction out;
    out.covariance = covariance_B0(taus, cfg.eta).entries;
    for (std::size_t k = 0; k < taus.size(); ++k) {
        const double g_k = g_function(cplx(cfg.x0 + taus[k] / d, cfg.eta / d)).real();
        out.means.push_back(nf * (g_k - g_m));
        out.mean_term += alphas[k] * out.means.back();
    }
    for (std::size_t k = 0; k < taus.size(); ++k) {
        for (std::size_t j = 0; j < taus.size(); ++j) {
            out.quadratic_form += 0.5 * alphas[k] * alphas[j] *
                                  out.covariance(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

double predicted_mean_w(const MesoscopicConfig& cfg, double tau, std::size_t n) {
    cfg.validate();
    const double d = cfg.zoom(n);
    const double shifted = g_function(cplx(cfg.x0 - tau / d, cfg.eta / d)).real();
    const double base = g_function(cplx(cfg.x0, cfg.eta / d)).real();
    return -static_cast<double>(n) * (shifted - base);
}

// ---------------------------------------------------------------------------
// Deterministic identity validators

SzegoDecayReport verify_szego_asymptotic(double tau_j, double tau_k, double eta, std::span<const double> d_values,
                                         double x0) {
    if (!(eta > 0.0)) throw std::invalid_argument("verify_szego_asymptotic: eta must be > 0");
    if (d_values.size() < 2) throw std::invalid_argument("verify_szego_asymptotic: need at least two d values");
    SzegoDecayReport rep;
    const double dt = tau_j - tau_k;
    rep.target = 0.25 * std::log(dt * dt + 4.0 * eta * eta);
    for (double d : d_values) {
        const cplx zj(x0 + tau_j / d, eta / d);
        const cplx zk(x0 + tau_k / d, eta / d);
        rep.d_values.push_back(d);
        rep.errors.push_back(std::abs(C_of(zj, zk).real() + 0.5 * std::log(d) - rep.target));
    }
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    const double m = static_cast<double>(d_values.size());
    for (std::size_t i = 0; i < rep.d_values.size(); ++i) {
        const double lx = std::log(rep.d_values[i]);
        const double ly = std::log(std::max(rep.errors[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    rep.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    rep.intercept = (sy - rep.slope * sx) / m;
    return rep;
}

double verify_log_chebyshev_identity(double x, double y, int n_max) {
    if (!(std::abs(x) <= 1.0 && std::abs(y) <= 1.0)) {
        throw std::invalid_argument("verify_log_chebyshev_identity: points must lie in [-1, 1]");
    }
    if (x == y) throw std::invalid_argument("verify_log_chebyshev_identity: x = y is the divergent point");
    if (n_max < 1) throw std::invalid_argument("verify_log_chebyshev_identity: n_max must be >= 1");
    const double tx = std::acos(x);
    const double ty = std::acos(y);
    const double k = static_cast<double>(n_max);
    double acc = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        const double weight = 1.0 - (n - 1.0) / k;
        acc += weight * (2.0 / n) * std::cos(n * tx) * std::cos(n * ty);
    }
    return std::abs(acc + std::log(2.0 * std::abs(x - y)));
}

namespace {

double log_integrand(double s, double t, double eps) {
    const double h = std::sin(0.5 * t * s);
    return std::exp(-eps * s) * 2.0 * h * h / s;
}

double log_closed_form(double t, double eps) { return 0.5 * std::log1p((t / eps) * (t / eps)); }

}  // namespace

double verify_log_integral_identity(double t, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("verify_log_integral_identity: eps must be > 0");
    if (t == 0.0) return 0.0;
    const double upper = 40.0 / eps;
    const int panels = std::max(8, static_cast<int>(std::ceil(upper * std::abs(t) / std::numbers::pi)));
    auto r = integrate_adaptive([&](double s) { return log_integrand(s, t, eps); }, 0.0, upper,
                                PanelOptions{1e-15, 1e-14, 20, panels, 1 << 20});
    if (!r.converged) throw QuadratureError("verify_log_integral_identity did not converge", r.error);
    return r.value - log_closed_form(t, eps);
}

double log_integral_identity_error(double t, double eps, int panels) {
    if (!(eps > 0.0)) throw std::invalid_argument("log_integral_identity_error: eps must be > 0");
    if (panels < 1) throw std::invalid_argument("log_integral_identity_error: panels must be >= 1");
    const GaussRule rule = gauss_legendre(20);
    const double v = integrate_panels([&](double s) { return log_integrand(s, t, eps); }, 0.0, 40.0 / eps, panels, rule);
    return v - log_closed_form(t, eps);
}

}  // namespace gue_lab
