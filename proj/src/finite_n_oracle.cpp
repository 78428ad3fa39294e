#include "gue_lab/finite_n_oracle.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "gue_lab/quadrature.hpp"
#include "gue_lab/stat_harness.hpp"

namespace gue_lab {

namespace {

constexpr std::size_t kMaxHermiteIndex = 100000;

// h_0..h_{l_max} at u. The recurrence runs on rescaled values so that
// exp(-u^2/2) may underflow without losing the higher-order functions.
std::vector<double> hermite_functions(std::size_t l_max, double u) {
    if (l_max > kMaxHermiteIndex) throw std::out_of_range("hermite_psi: index beyond supported range");
    constexpr double kBig = 1e150;
    std::vector<double> h(l_max + 1, 0.0);
    std::vector<double> log_scale(l_max + 1, 0.0);
    double log_s = -0.5 * u * u - 0.25 * std::log(std::numbers::pi);
    double prev = 0.0;
    double cur = 1.0;
    h[0] = cur;
    log_scale[0] = log_s;
    for (std::size_t l = 0; l < l_max; ++l) {
        const double lf = static_cast<double>(l);
        const double next = u * std::sqrt(2.0 / (lf + 1.0)) * cur - std::sqrt(lf / (lf + 1.0)) * prev;
        prev = cur;
        cur = next;
        if (std::abs(cur) > kBig) {
            prev /= kBig;
            cur /= kBig;
            log_s += std::log(kBig);
        }
        h[l + 1] = cur;
        log_scale[l + 1] = log_s;
    }
    for (std::size_t l = 0; l <= l_max; ++l) {
        h[l] = (h[l] == 0.0) ? 0.0 : std::copysign(std::exp(std::log(std::abs(h[l])) + log_scale[l]), h[l]);
    }
    return h;
}

}  // namespace

std::vector<double> hermite_psi_all(std::size_t n_matrix, std::size_t l_max, double x) {
    if (n_matrix == 0) throw std::invalid_argument("hermite_psi: N must be >= 1");
    const double s = std::sqrt(2.0 * static_cast<double>(n_matrix));
    auto h = hermite_functions(l_max, s * x);
    const double amp = std::sqrt(s);
    for (auto& v : h) v *= amp;
    return h;
}

double hermite_psi(std::size_t n_matrix, std::size_t l, double x) { return hermite_psi_all(n_matrix, l, x)[l]; }

KernelEvaluator::KernelEvaluator(std::size_t n_matrix)
    : n_(n_matrix), scale_(std::sqrt(2.0 * static_cast<double>(n_matrix))) {
    if (n_matrix == 0) throw std::invalid_argument("KernelEvaluator: N must be >= 1");
}

KernelEvaluator::Row KernelEvaluator::row(double x) const {
    const auto psi = hermite_psi_all(n_, n_ + 1, x);
    Row r;
    r.x = x;
    r.psi[0] = (n_ >= 2) ? psi[n_ - 2] : 0.0;
    r.psi[1] = psi[n_ - 1];
    r.psi[2] = psi[n_];
    r.psi[3] = psi[n_ + 1];
    return r;
}

double KernelEvaluator::diagonal(const Row& a) const {
    const double nf = static_cast<double>(n_);
    // psi_l' = s (sqrt(l/2) psi_{l-1} - sqrt((l+1)/2) psi_{l+1}).
    const double d_n = scale_ * (std::sqrt(nf / 2.0) * a.psi[1] - std::sqrt((nf + 1.0) / 2.0) * a.psi[3]);
    const double d_nm1 = scale_ * (std::sqrt((nf - 1.0) / 2.0) * a.psi[0] - std::sqrt(nf / 2.0) * a.psi[2]);
    return std::sqrt(nf / 2.0) / scale_ * (d_n * a.psi[1] - d_nm1 * a.psi[2]);
}

double KernelEvaluator::kernel(const Row& a, const Row& b) const {
    const double h = a.x - b.x;
    if (std::abs(h) < kConfluentThreshold) return 0.5 * (diagonal(a) + diagonal(b));
    const double nf = static_cast<double>(n_);
    return std::sqrt(nf / 2.0) / scale_ * (a.psi[2] * b.psi[1] - a.psi[1] * b.psi[2]) / h;
}

double kernel_K(const KernelEvaluator& ev, double x1, double x2) { return ev.kernel(x1, x2); }

double density_rho(const KernelEvaluator& ev, double x) {
    return ev.diagonal(ev.row(x)) / static_cast<double>(ev.n());
}

namespace {

struct Nodes {
    std::vector<double> x;
    std::vector<double> w;
};

Nodes composite_nodes(double lo, double hi, int panels, const GaussRule& rule) {
    Nodes out;
    const double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * h;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            out.x.push_back(mid + 0.5 * h * rule.nodes[i]);
            out.w.push_back(0.5 * h * rule.weights[i]);
        }
    }
    return out;
}

double tail_mass(const KernelEvaluator& ev, double edge) {
    auto integrand = [&](double x) { return ev.diagonal(ev.row(x)); };
    auto r = integrate_adaptive(integrand, edge, edge + 4.0, PanelOptions{1e-16, 1e-6, 16, 8, 1 << 10});
    return 2.0 * std::abs(r.value);
}

// Half-width of the integration box: 1 + margin, widened in steps of 1/4
// until the density mass outside is negligible (small N has Gaussian tails).
double integration_edge(const KernelEvaluator& ev, const OracleQuadSpec& spec) {
    double edge = 1.0 + spec.margin;
    while (edge < 12.0 && tail_mass(ev, edge) > 1e-15) edge += 0.25;
    return edge;
}

double cov_estimate(const KernelEvaluator& ev, const RealFunction& f1, const RealFunction& f2, double edge,
                    int panels, const GaussRule& rule, bool parallel) {
    const Nodes nodes = composite_nodes(-edge, edge, panels, rule);
    const auto m = static_cast<std::int64_t>(nodes.x.size());
    std::vector<KernelEvaluator::Row> rows(nodes.x.size());
    std::vector<double> g1(nodes.x.size());
    std::vector<double> g2(nodes.x.size());
    for (std::int64_t i = 0; i < m; ++i) {
        rows[i] = ev.row(nodes.x[i]);
        g1[i] = f1(nodes.x[i]);
        g2[i] = f2(nodes.x[i]);
    }

    std::vector<double> partial(nodes.x.size(), 0.0);
    auto body = [&](std::int64_t i) {
        NeumaierSum acc;
        for (std::int64_t j = 0; j < i; ++j) {
            const double k = ev.kernel(rows[i], rows[j]);
            acc.add(nodes.w[j] * (g1[i] - g1[j]) * (g2[i] - g2[j]) * k * k);
        }
        partial[i] = nodes.w[i] * acc.value();
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < m; ++i) body(i);
    } else {
        for (std::int64_t i = 0; i < m; ++i) body(i);
    }
    // 1/2 * 2 * sum_{j < i}.
    NeumaierSum total;
    for (double p : partial) total.add(p);
    return total.value();
}

}  // namespace

OracleResult exact_linear_stat_cov(const KernelEvaluator& ev, const RealFunction& f1, const RealFunction& f2,
                                   const OracleQuadSpec& spec) {
    if (!(spec.margin > 0.0) || spec.initial_panels < 1 || spec.max_panels < spec.initial_panels) {
        throw std::invalid_argument("exact_linear_stat_cov: invalid quadrature spec");
    }
    const double edge = integration_edge(ev, spec);
    const GaussRule rule = gauss_legendre(spec.order);
    OracleResult out;
    out.tail_bound = tail_mass(ev, edge);

    int panels = spec.initial_panels;
    double prev = cov_estimate(ev, f1, f2, edge, panels, rule, spec.parallel);
    while (panels < spec.max_panels) {
        panels *= 2;
        const double cur = cov_estimate(ev, f1, f2, edge, panels, rule, spec.parallel);
        out.value = cur;
        out.error_estimate = std::abs(cur - prev);
        out.panels = panels;
        if (out.error_estimate <= std::max(spec.abs_tol, spec.rel_tol * std::abs(cur))) return out;
        prev = cur;
    }
    throw QuadratureError("exact_linear_stat_cov: relative tolerance not met", out.error_estimate);
}

OracleResult exact_linear_stat_mean(const KernelEvaluator& ev, const RealFunction& f, const OracleQuadSpec& spec) {
    if (!(spec.margin > 0.0)) throw std::invalid_argument("exact_linear_stat_mean: invalid quadrature spec");
    const double edge = integration_edge(ev, spec);
    auto integrand = [&](double x) { return f(x) * ev.diagonal(ev.row(x)); };
    PanelOptions opt{spec.abs_tol, spec.rel_tol * 1e-2, spec.order, spec.initial_panels, spec.max_panels * 8};
    auto r = integrate_adaptive(integrand, -edge, edge, opt);
    if (!r.converged) throw QuadratureError("exact_linear_stat_mean: tolerance not met", r.error);
    OracleResult out;
    out.value = r.value;
    out.error_estimate = r.error;
    out.panels = r.panels;
    out.tail_bound = tail_mass(ev, edge);
    return out;
}

}  // namespace gue_lab
