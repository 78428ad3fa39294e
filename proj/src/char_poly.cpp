#include "gue_lab/char_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gue_lab {

// ---------------------------------------------------------------------------
// MesoscopicConfig

MesoscopicConfig MesoscopicConfig::make(double x0, double eta, double alpha) {
    MesoscopicConfig cfg{x0, eta, alpha};
    cfg.validate();
    return cfg;
}

void MesoscopicConfig::validate() const {
    if (!(std::abs(x0) < 1.0)) throw std::invalid_argument("MesoscopicConfig: need |x0| < 1");
    if (!(eta > 0.0)) throw std::invalid_argument("MesoscopicConfig: need eta > 0");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("MesoscopicConfig: need 0 < alpha < 1");
}

double MesoscopicConfig::zoom(std::size_t n) const { return std::pow(static_cast<double>(n), alpha); }

// ---------------------------------------------------------------------------
// Log-modulus processes

double log_abs_charpoly(const EigenvalueSample& sample, double x) {
    double acc = 0.0;
    for (std::size_t j = 0; j < sample.values.size(); ++j) {
        const double gap = std::abs(sample.values[j] - x);
        if (gap < kCollisionGuard) {
            throw SingularInputError("log_abs_charpoly: x coincides with an eigenvalue", j);
        }
        acc -= std::log(gap);
    }
    return acc;
}

double meso_increment(const EigenvalueSample& sample, const MesoscopicConfig& cfg, double tau) {
    const double taus[1] = {tau};
    return meso_path(sample, cfg, taus)[0];
}

std::vector<double> meso_path(const EigenvalueSample& sample, const MesoscopicConfig& cfg,
                              std::span<const double> taus) {
    cfg.validate();
    const double d = cfg.zoom(sample.n());
    const double eps2 = (cfg.eta / d) * (cfg.eta / d);
    std::vector<double> shifts(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i) shifts[i] = taus[i] / d;

    std::vector<double> out(taus.size(), 0.0);
    for (double x : sample.values) {
        const double y = x - cfg.x0;
        const double base = y * y + eps2;
        for (std::size_t i = 0; i < taus.size(); ++i) {
            const double ys = y + shifts[i];
            out[i] += std::log(base / (ys * ys + eps2));
        }
    }
    for (auto& v : out) v *= 0.5;
    return out;
}

// ---------------------------------------------------------------------------
// Chebyshev statistics

double chebyshev_T(int n, double x) {
    if (n < 0) throw std::invalid_argument("chebyshev_T: order must be >= 0");
    if (n == 0) return 1.0;
    double t_prev = 1.0;
    double t = x;
    for (int k = 1; k < n; ++k) {
        const double t_next = 2.0 * x * t - t_prev;
        t_prev = t;
        t = t_next;
    }
    return t;
}

double chebyshev_trace(const EigenvalueSample& sample, int n) {
    if (n < 0) throw std::invalid_argument("chebyshev_trace: order must be >= 0");
    double acc = 0.0;
    for (double x : sample.values) acc += chebyshev_T(n, x);
    return acc;
}

std::vector<double> chebyshev_traces(const EigenvalueSample& sample, int n_max) {
    if (n_max < 0) throw std::invalid_argument("chebyshev_traces: order must be >= 0");
    std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (double x : sample.values) {
        double t_prev = 1.0;
        double t = x;
        out[0] += 1.0;
        if (n_max >= 1) out[1] += x;
        for (int k = 2; k <= n_max; ++k) {
            const double t_next = 2.0 * x * t - t_prev;
            t_prev = t;
            t = t_next;
            out[static_cast<std::size_t>(k)] += t;
        }
    }
    return out;
}

double chebyshev_a_coefficient(const EigenvalueSample& sample, int n) {
    if (n < 1) throw std::invalid_argument("chebyshev_a_coefficient: n must be >= 1");
    return 2.0 / std::sqrt(static_cast<double>(n)) * chebyshev_trace(sample, n);
}

double edge_correction(int k, double x, int side) {
    if (k < 0) throw std::invalid_argument("edge_correction: k must be >= 0");
    if (side != 1 && side != -1) throw std::invalid_argument("edge_correction: side must be +1 or -1");
    if (!(side * x > 1.0)) return 0.0;
    const double r = x - side * std::sqrt(x * x - 1.0);
    if (k == 0) return std::log(std::abs(r));
    return 2.0 / k * (-chebyshev_T(k, x) + std::pow(r, k));
}

ChebCoeffSeries cheb_fourier_coeffs(const EigenvalueSample& sample, int k_max) {
    if (k_max < 1) throw std::invalid_argument("cheb_fourier_coeffs: k_max must be >= 1");
    ChebCoeffSeries out;
    out.k_max = k_max;
    out.c.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
    out.n_log2_term = static_cast<double>(sample.n()) * std::numbers::ln2;

    std::vector<double> trace(out.c.size(), 0.0);
    for (double x : sample.values) {
        if (std::abs(x) > 1.0) {
            // (2/k)T_k(x) + r_k(x) = (2/k) r^k with r = x -+ sqrt(x^2 - 1), |r| < 1.
            const double r = x - std::copysign(std::sqrt(x * x - 1.0), x);
            out.c[0] += std::log(std::abs(r));
            double rk = 1.0;
            for (int k = 1; k <= k_max; ++k) {
                rk *= r;
                out.c[static_cast<std::size_t>(k)] += 2.0 / k * rk;
            }
            continue;
        }
        double t_prev = 1.0;
        double t = x;
        trace[1] += t;
        for (int k = 2; k <= k_max; ++k) {
            const double t_next = 2.0 * x * t - t_prev;
            t_prev = t;
            t = t_next;
            trace[static_cast<std::size_t>(k)] += t;
        }
    }
    for (int k = 1; k <= k_max; ++k) {
        out.c[static_cast<std::size_t>(k)] += 2.0 / k * trace[static_cast<std::size_t>(k)];
    }
    return out;
}

double ChebCoeffSeries::evaluate(double x) const {
    double b1 = 0.0;
    double b2 = 0.0;
    for (int k = k_max; k >= 1; --k) {
        const double b0 = c[static_cast<std::size_t>(k)] + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return n_log2_term + c[0] + x * b1 - b2;
}

// ---------------------------------------------------------------------------
// Bump test functions and the Fourier-integral statistics

TestFunction TestFunction::make(double center, double half_width, double amplitude) {
    TestFunction xi{center, half_width, amplitude};
    xi.validate();
    return xi;
}

void TestFunction::validate() const {
    if (!(half_width > 0.0)) throw std::invalid_argument("TestFunction: half_width must be > 0");
    if (!(center - half_width > 0.0)) throw std::invalid_argument("TestFunction: support must lie in (0, inf)");
    if (!std::isfinite(amplitude)) throw std::invalid_argument("TestFunction: amplitude must be finite");
}

double TestFunction::operator()(double s) const {
    const double u = (s - center) / half_width;
    const double q = 1.0 - u * u;
    if (q <= 0.0) return 0.0;
    return amplitude * std::exp(1.0 - 1.0 / q);
}

TestFunction default_bump() { return TestFunction{2.0, 1.0, 1.0}; }

double bump_inner_product(const TestFunction& a, const TestFunction& b) {
    const double lo = std::max(a.support_lo(), b.support_lo());
    const double hi = std::min(a.support_hi(), b.support_hi());
    if (!(lo < hi)) return 0.0;
    auto r = integrate_adaptive([&](double s) { return a(s) * b(s); }, lo, hi,
                                PanelOptions{1e-14, 1e-13, 20, 2, 1 << 12});
    return r.value;
}

namespace {

int oscillation_panels(double width, double frequency) {
    return std::max(4, static_cast<int>(std::ceil(width * std::abs(frequency) / std::numbers::pi)));
}

}  // namespace

std::complex<double> bump_transform(const TestFunction& xi, double x, double abs_tol) {
    xi.validate();
    auto integrand = [&](double s) {
        return xi(s) / std::sqrt(s) * std::complex<double>(std::cos(s * x), -std::sin(s * x));
    };
    const double width = xi.support_hi() - xi.support_lo();
    PanelOptions opt{abs_tol, 0.0, 16, oscillation_panels(width, x), 1 << 16};
    auto r = integrate_adaptive(integrand, xi.support_lo(), xi.support_hi(), opt);
    if (!r.converged) throw QuadratureError("bump_transform did not converge", r.error);
    return r.value;
}

SmearedTransform::SmearedTransform(const TestFunction& xi, double x_max, double abs_tol) : xi_(xi) {
    xi_.validate();
    const double lo = xi_.support_lo();
    const double hi = xi_.support_hi();
    const GaussRule rule = gauss_legendre(16);

    std::vector<double> probes;
    constexpr int kProbes = 41;
    for (int i = 0; i < kProbes; ++i) probes.push_back(-x_max + 2.0 * x_max * i / (kProbes - 1));
    std::vector<std::complex<double>> reference;
    reference.reserve(probes.size());
    for (double x : probes) reference.push_back(bump_transform(xi_, x, 0.05 * abs_tol));

    for (int panels = oscillation_panels(hi - lo, x_max); panels <= (1 << 14); panels *= 2) {
        s_.clear();
        w_.clear();
        const double h = (hi - lo) / panels;
        for (int p = 0; p < panels; ++p) {
            const double mid = lo + (p + 0.5) * h;
            for (std::size_t i = 0; i < rule.size(); ++i) {
                const double s = mid + 0.5 * h * rule.nodes[i];
                s_.push_back(s);
                w_.push_back(0.5 * h * rule.weights[i] * xi_(s) / std::sqrt(s));
            }
        }
        double worst = 0.0;
        for (std::size_t i = 0; i < probes.size(); ++i) {
            worst = std::max(worst, std::abs((*this)(probes[i]) - reference[i]));
        }
        if (worst <= abs_tol) return;
    }
    throw QuadratureError("SmearedTransform: fixed rule did not reach tolerance", abs_tol);
}

std::complex<double> SmearedTransform::operator()(double x) const {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < s_.size(); ++i) {
        const double phase = s_[i] * x;
        re += w_[i] * std::cos(phase);
        im -= w_[i] * std::sin(phase);
    }
    return {re, im};
}

std::complex<double> fourier_coeff_b(const EigenvalueSample& sample, const MesoscopicConfig& cfg, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("fourier_coeff_b: s must be > 0");
    cfg.validate();
    const double d = cfg.zoom(sample.n());
    double re = 0.0;
    double im = 0.0;
    for (double x : sample.values) {
        const double phase = s * d * (x - cfg.x0);
        re += std::cos(phase);
        im -= std::sin(phase);
    }
    return std::complex<double>(re, im) / std::sqrt(s);
}

SmearedCoeff smeared_coeff_c(const EigenvalueSample& sample, const MesoscopicConfig& cfg,
                             const TestFunction& xi) {
    cfg.validate();
    xi.validate();
    const double d = cfg.zoom(sample.n());
    const double n = static_cast<double>(sample.n());

    SmearedCoeff out;
    for (double x : sample.values) out.value += bump_transform(xi, d * (x - cfg.x0), 1e-11);

    double spread = 0.0;
    for (double x : sample.values) spread = std::max(spread, std::abs(x - cfg.x0));
    const double width = xi.support_hi() - xi.support_lo();
    PanelOptions opt{1e-10 * std::max(1.0, n), 0.0, 16, oscillation_panels(width, d * spread), 1 << 18};
    auto r = integrate_adaptive([&](double s) { return xi(s) * fourier_coeff_b(sample, cfg, s); },
                                xi.support_lo(), xi.support_hi(), opt);
    if (!r.converged) throw QuadratureError("smeared_coeff_c: integral route did not converge", r.error);
    out.integral_route = r.value;
    out.route_gap = std::abs(out.value - out.integral_route);
    return out;
}

std::complex<double> smeared_coeff_c(const EigenvalueSample& sample, const MesoscopicConfig& cfg,
                                     const SmearedTransform& f) {
    const double d = cfg.zoom(sample.n());
    std::complex<double> acc{};
    for (double x : sample.values) acc += f(d * (x - cfg.x0));
    return acc;
}

}  // namespace gue_lab
