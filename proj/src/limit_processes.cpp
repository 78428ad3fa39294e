#include "gue_lab/limit_processes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gue_lab/quadrature.hpp"

namespace gue_lab {

namespace {

void check_hurst(double hurst) {
    if (!(hurst > 0.0 && hurst < 1.0)) throw std::invalid_argument("phi_H: Hurst index must lie in (0, 1)");
}

void check_eta(double eta, const char* who) {
    if (!(eta > 0.0)) throw std::invalid_argument(std::string(who) + ": eta must be > 0");
}

}  // namespace

double phi_H_quadrature(double t, double hurst, double eta) {
    check_hurst(hurst);
    check_eta(eta, "phi_H_quadrature");
    if (t == 0.0) return 0.0;
    const double p = 1.0 + 2.0 * hurst;
    auto integrand = [&](double s) {
        const double half = std::sin(0.5 * t * s);
        return std::exp(-2.0 * eta * s) * std::pow(s, -p) * 2.0 * half * half;
    };
    const double upper = 40.0 / eta;
    const double knee = std::min(upper, 1.0 / std::max(1.0, std::abs(t)));
    const PanelOptions opt{1e-15, 1e-13, 20, 4, 1 << 14};

    double total = 0.0;
    // Geometric grading towards s = 0, where the integrand behaves like s^{1-2H}.
    double hi = knee;
    for (int level = 0; level < 80; ++level) {
        const double lo = 0.5 * hi;
        total += integrate_adaptive(integrand, lo, hi, opt).value;
        hi = lo;
    }
    // Remaining [0, hi]: integrand ~ (t^2/2) s^{1-2H}.
    total += 0.5 * t * t * std::pow(hi, 2.0 - 2.0 * hurst) / (2.0 - 2.0 * hurst);
    PanelOptions tail = opt;
    tail.initial_panels = std::max(4, static_cast<int>(std::ceil((upper - knee) * std::abs(t) / std::numbers::pi)));
    auto r = integrate_adaptive(integrand, knee, upper, tail);
    if (!r.converged) throw QuadratureError("phi_H_quadrature did not converge", r.error);
    return 0.5 * (total + r.value);
}

double phi_H(double t, double hurst, double eta) {
    check_hurst(hurst);
    if (eta < 0.0) throw std::invalid_argument("phi_H: eta must be >= 0");
    if (t == 0.0) return 0.0;
    const double eps = 1.0 - 2.0 * hurst;
    if (eta == 0.0) {
        // Gamma(eps) cos(pi H) = Gamma(1 + eps) sin(pi eps / 2) / eps.
        const double sinc = (std::abs(eps) < 1e-8) ? 0.5 * std::numbers::pi
                                                   : std::sin(0.5 * std::numbers::pi * eps) / eps;
        return std::tgamma(1.0 + eps) * sinc / (4.0 * hurst) * std::pow(std::abs(t), 2.0 * hurst);
    }
    if (std::abs(eps) < 1e-3) return phi_H_quadrature(t, hurst, eta);
    const double two_eta = 2.0 * eta;
    const double bracket = std::pow(two_eta * two_eta + t * t, hurst) * std::cos(2.0 * hurst * std::atan(t / two_eta)) -
                           std::pow(two_eta, 2.0 * hurst);
    return std::tgamma(eps) / (4.0 * hurst) * bracket;
}

double phi0(double t, double eta) {
    check_eta(eta, "phi0");
    const double r = t / (2.0 * eta);
    return 0.25 * std::log1p(r * r);
}

double cov_B0(double tau, double upsilon, double eta) {
    return phi0(tau, eta) + phi0(upsilon, eta) - phi0(tau - upsilon, eta);
}

CovarianceMatrix covariance_B0(std::span<const double> times, double eta) {
    CovarianceMatrix out;
    out.times.assign(times.begin(), times.end());
    const auto m = static_cast<Eigen::Index>(times.size());
    out.entries.resize(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double c = cov_B0(times[i], times[j], eta);
            out.entries(i, j) = c;
            out.entries(j, i) = c;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

CholeskyB0Sampler::CholeskyB0Sampler(std::vector<double> times, double eta) : times_(std::move(times)) {
    check_eta(eta, "CholeskyB0Sampler");
    for (std::size_t i = 0; i < times_.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (times_[i] == times_[j]) throw std::invalid_argument("CholeskyB0Sampler: times must be distinct");
        }
        if (times_[i] != 0.0) active_.push_back(i);
    }
    std::vector<double> active_times;
    for (auto i : active_) active_times.push_back(times_[i]);
    Eigen::MatrixXd cov = covariance_B0(active_times, eta).entries;
    if (cov.size() == 0) return;

    const double max_diag = cov.diagonal().maxCoeff();
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    for (int attempt = 0; llt.info() != Eigen::Success; ++attempt) {
        if (attempt == 10) throw std::runtime_error("CholeskyB0Sampler: covariance factorization failed");
        jitter_ = (jitter_ == 0.0) ? 1e-12 * max_diag : 10.0 * jitter_;
        cov.diagonal().array() += jitter_;
        llt.compute(cov);
    }
    lower_ = llt.matrixL();
}

std::vector<double> CholeskyB0Sampler::sample(StreamTag tag) const {
    std::vector<double> out(times_.size(), 0.0);
    if (active_.empty()) return out;
    auto engine = make_engine(tag);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd z(static_cast<Eigen::Index>(active_.size()));
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = normal(engine);
    const Eigen::VectorXd x = lower_.triangularView<Eigen::Lower>() * z;
    for (std::size_t i = 0; i < active_.size(); ++i) out[active_[i]] = x(static_cast<Eigen::Index>(i));
    return out;
}

std::vector<double> sample_B0_cholesky(std::span<const double> times, double eta, StreamTag tag) {
    return CholeskyB0Sampler(std::vector<double>(times.begin(), times.end()), eta).sample(tag);
}

// ---------------------------------------------------------------------------

HarmonizableGrid HarmonizableGrid::make(double s_max, double ds) {
    if (!(s_max > 0.0) || !(ds > 0.0) || ds > s_max) {
        throw std::invalid_argument("HarmonizableGrid: need s_max > 0 and 0 < ds <= s_max");
    }
    HarmonizableGrid g;
    g.count = static_cast<std::size_t>(std::ceil(s_max / ds - 1e-9));
    g.s_max = s_max;
    g.ds = s_max / static_cast<double>(g.count);
    return g;
}

namespace {

double widest_separation(std::span<const double> times) {
    double widest = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        widest = std::max(widest, std::abs(times[i]));
        for (std::size_t j = 0; j < i; ++j) widest = std::max(widest, std::abs(times[i] - times[j]));
    }
    return widest;
}

}  // namespace

HarmonizableGrid HarmonizableGrid::defaults(std::span<const double> times, double eta) {
    check_eta(eta, "HarmonizableGrid::defaults");
    const double s_max = 50.0 / eta;
    const double widest = std::max(widest_separation(times), 1e-3);
    return make(s_max, std::min(s_max, std::numbers::pi / (10.0 * widest)));
}

HarmonizableB0Sampler::HarmonizableB0Sampler(std::vector<double> times, double eta, HarmonizableGrid grid)
    : times_(std::move(times)), eta_(eta), grid_(grid) {
    check_eta(eta, "HarmonizableB0Sampler");
    if (grid_.count == 0) throw std::invalid_argument("HarmonizableB0Sampler: empty grid");
    const auto m = static_cast<Eigen::Index>(times_.size());
    const auto n = static_cast<Eigen::Index>(grid_.count);
    re_.resize(m, n);
    im_.resize(m, n);
    const double c = 1.0 / std::sqrt(2.0);  // 2 * 1/(2 sqrt 2)
    for (Eigen::Index k = 0; k < n; ++k) {
        const double s = (static_cast<double>(k) + 0.5) * grid_.ds;
        const double w = c * std::exp(-eta_ * s) * std::sqrt(grid_.ds / s);
        for (Eigen::Index i = 0; i < m; ++i) {
            re_(i, k) = w * (std::cos(times_[i] * s) - 1.0);
            im_(i, k) = -w * std::sin(times_[i] * s);
        }
    }

    const Eigen::MatrixXd disc = discrete_covariance();
    const Eigen::MatrixXd exact = covariance_B0(times_, eta_).entries;
    bias_ = (disc - exact).cwiseAbs().maxCoeff();

    const HarmonizableGrid ref = HarmonizableGrid::defaults(times_, eta_);
    if (grid_.s_max < ref.s_max * (1.0 - 1e-12) || grid_.ds > ref.ds * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "harmonizable grid coarser than defaults (s_max " << grid_.s_max << " vs " << ref.s_max << ", ds "
            << grid_.ds << " vs " << ref.ds << "); predicted covariance bias " << bias_;
        warnings_.push_back(msg.str());
    }
}

Eigen::MatrixXd HarmonizableB0Sampler::discrete_covariance() const {
    // Cov = sum_k 2 (re_i re_j + im_i im_j) / 2 per unit complex increment.
    return re_ * re_.transpose() + im_ * im_.transpose();
}

std::vector<double> HarmonizableB0Sampler::sample(StreamTag tag) const {
    auto engine = make_engine(tag);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto n = re_.cols();
    Eigen::VectorXd g1(n);
    Eigen::VectorXd g2(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        g1(k) = normal(engine);
        g2(k) = normal(engine);
    }
    // Re[(a + ib)(g1 + i g2)] = a g1 - b g2.
    const Eigen::VectorXd x = re_ * g1 - im_ * g2;
    std::vector<double> out(x.data(), x.data() + x.size());
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (times_[i] == 0.0) out[i] = 0.0;
    }
    return out;
}

void HarmonizableB0Sampler::sample_many(std::uint64_t seed, std::size_t first, std::size_t count,
                                        Eigen::MatrixXd& out, bool parallel) const {
    out.resize(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(times_.size()));
    const auto total = static_cast<std::int64_t>(count);
    auto body = [&](std::int64_t r) {
        const auto row = sample(StreamTag{seed, first + static_cast<std::uint64_t>(r)});
        for (std::size_t i = 0; i < row.size(); ++i) out(r, static_cast<Eigen::Index>(i)) = row[i];
    };
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t r = 0; r < total; ++r) body(r);
    } else {
        for (std::int64_t r = 0; r < total; ++r) body(r);
    }
}

std::vector<double> sample_B0_harmonizable(std::span<const double> times, double eta, const HarmonizableGrid& grid,
                                           StreamTag tag, std::vector<std::string>* warnings) {
    HarmonizableB0Sampler sampler(std::vector<double>(times.begin(), times.end()), eta, grid);
    if (warnings != nullptr) {
        warnings->insert(warnings->end(), sampler.warnings().begin(), sampler.warnings().end());
    }
    return sampler.sample(tag);
}

// ---------------------------------------------------------------------------

std::vector<double> sample_F_series(std::span<const double> xs, int n_max, StreamTag tag) {
    if (n_max < 1) throw std::invalid_argument("sample_F_series: n_max must be >= 1");
    for (double x : xs) {
        if (!(std::abs(x) < 1.0)) throw std::invalid_argument("sample_F_series: points must satisfy |x| < 1");
    }
    auto engine = make_engine(tag);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> a(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) a[static_cast<std::size_t>(n)] = normal(engine) / std::sqrt(static_cast<double>(n));

    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) {
        double t_prev = 1.0;
        double t = x;
        double acc = a[1] * t;
        for (int n = 2; n <= n_max; ++n) {
            const double t_next = 2.0 * x * t - t_prev;
            t_prev = t;
            t = t_next;
            acc += a[static_cast<std::size_t>(n)] * t;
        }
        out.push_back(acc);
    }
    return out;
}

double F_series_covariance(double x, double y, int n_max) {
    if (n_max < 1) throw std::invalid_argument("F_series_covariance: n_max must be >= 1");
    double tx_prev = 1.0;
    double tx = x;
    double ty_prev = 1.0;
    double ty = y;
    double acc = tx * ty;
    for (int n = 2; n <= n_max; ++n) {
        const double tx_next = 2.0 * x * tx - tx_prev;
        const double ty_next = 2.0 * y * ty - ty_prev;
        tx_prev = tx;
        tx = tx_next;
        ty_prev = ty;
        ty = ty_next;
        acc += tx * ty / n;
    }
    return acc;
}

}  // namespace gue_lab
