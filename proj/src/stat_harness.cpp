#include "gue_lab/stat_harness.hpp"

#include <exception>
#include <limits>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gue_lab {

SampleStats::SampleStats(std::vector<std::string> columns, Eigen::MatrixXd data, std::uint64_t seed)
    : columns_(std::move(columns)), data_(std::move(data)), seed_(seed) {
    if (data_.rows() < 2) throw std::invalid_argument("SampleStats: need at least 2 replicates");
    if (static_cast<Eigen::Index>(columns_.size()) != data_.cols()) {
        throw std::invalid_argument("SampleStats: column names do not match data width");
    }
    const auto r = data_.rows();
    const auto k = data_.cols();
    mean_.assign(static_cast<std::size_t>(k), 0.0);
    for (Eigen::Index j = 0; j < k; ++j) {
        NeumaierSum s;
        for (Eigen::Index i = 0; i < r; ++i) s.add(data_(i, j));
        mean_[static_cast<std::size_t>(j)] = s.value() / static_cast<double>(r);
    }
    cov_.resize(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b <= a; ++b) {
            NeumaierSum s;
            for (Eigen::Index i = 0; i < r; ++i) {
                s.add((data_(i, a) - mean_[static_cast<std::size_t>(a)]) *
                      (data_(i, b) - mean_[static_cast<std::size_t>(b)]));
            }
            const double c = s.value() / static_cast<double>(r - 1);
            cov_(a, b) = c;
            cov_(b, a) = c;
        }
    }
}

std::size_t SampleStats::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i] == name) return i;
    }
    throw std::out_of_range("SampleStats: no column named '" + name + "'");
}

std::vector<double> SampleStats::column(std::size_t i) const {
    const auto c = data_.col(static_cast<Eigen::Index>(i));
    return {c.data(), c.data() + c.size()};
}

double SampleStats::se_mean(std::size_t i) const {
    return std::sqrt(variance(i) / static_cast<double>(replicates()));
}

double SampleStats::se_covariance(std::size_t i, std::size_t j) const {
    const auto a = static_cast<Eigen::Index>(i);
    const auto b = static_cast<Eigen::Index>(j);
    NeumaierSum s;
    for (Eigen::Index r = 0; r < data_.rows(); ++r) {
        const double p = (data_(r, a) - mean_[i]) * (data_(r, b) - mean_[j]);
        s.add(p * p);
    }
    const double n = static_cast<double>(replicates());
    const double m22 = s.value() / n;
    const double c = cov_(a, b);
    return std::sqrt(std::max(m22 - c * c, 0.0) / n);
}

double SampleStats::correlation(std::size_t i, std::size_t j) const {
    return covariance(i, j) / std::sqrt(variance(i) * variance(j));
}

double SampleStats::se_correlation(std::size_t i, std::size_t j) const {
    return se_covariance(i, j) / std::sqrt(variance(i) * variance(j));
}

SampleStats run_replicated(const Experiment& exp, std::size_t replicates, std::uint64_t seed, const RunOptions& opt) {
    if (replicates < 2) throw std::invalid_argument("run_replicated: need at least 2 replicates");
    const auto k = static_cast<Eigen::Index>(exp.columns.size());
    Eigen::MatrixXd data(static_cast<Eigen::Index>(replicates), k);
    const auto total = static_cast<std::int64_t>(replicates);

    std::uint64_t failed_at = std::numeric_limits<std::uint64_t>::max();
    std::string failure;
    auto body = [&](std::int64_t r) {
        try {
            const auto row = exp.statistic(StreamTag{seed, static_cast<std::uint64_t>(r)});
            if (static_cast<Eigen::Index>(row.size()) != k) {
                throw std::length_error("statistic returned " + std::to_string(row.size()) + " values, expected " +
                                        std::to_string(k));
            }
            for (Eigen::Index j = 0; j < k; ++j) data(r, j) = row[static_cast<std::size_t>(j)];
        } catch (const std::exception& e) {
#pragma omp critical(gue_lab_replicate_failure)
            {
                if (static_cast<std::uint64_t>(r) < failed_at) {
                    failed_at = static_cast<std::uint64_t>(r);
                    failure = e.what();
                }
            }
        }
    };

    if (opt.parallel) {
#ifdef _OPENMP
        const int threads = (opt.threads > 0) ? opt.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
        for (std::int64_t r = 0; r < total; ++r) body(r);
#else
        for (std::int64_t r = 0; r < total; ++r) body(r);
#endif
    } else {
        for (std::int64_t r = 0; r < total; ++r) body(r);
    }
    if (failed_at != std::numeric_limits<std::uint64_t>::max()) {
        throw ReplicateError(exp.name, failed_at, failure);
    }
    return SampleStats(exp.columns, std::move(data), seed);
}

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda < 1.18) {
        // Jacobi-transformed series, fast for small lambda.
        const double pi2 = std::numbers::pi * std::numbers::pi;
        double s = 0.0;
        for (int k = 1; k <= 20; ++k) {
            const double m = 2.0 * k - 1.0;
            s += std::exp(-m * m * pi2 / (8.0 * lambda * lambda));
        }
        return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * s, 0.0, 1.0);
    }
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        s += (k % 2 == 1) ? term : -term;
        if (term < 1e-300) break;
    }
    return std::clamp(2.0 * s, 0.0, 1.0);
}

namespace {

double effective_lambda(double n, double d) {
    const double sn = std::sqrt(n);
    return (sn + 0.12 + 0.11 / sn) * d;
}

}  // namespace

KsResult ks_normality(std::span<const double> samples) {
    const std::size_t n = samples.size();
    if (n < 100) throw std::invalid_argument("ks_normality: need at least 100 samples");
    NeumaierSum s;
    for (double x : samples) s.add(x);
    const double mean = s.value() / static_cast<double>(n);
    NeumaierSum v;
    for (double x : samples) v.add((x - mean) * (x - mean));
    const double var = v.value() / static_cast<double>(n - 1);
    if (!(var > 0.0)) throw std::invalid_argument("ks_normality: degenerate (zero-variance) input");
    const double sd = std::sqrt(var);

    std::vector<double> z(samples.begin(), samples.end());
    for (auto& x : z) x = (x - mean) / sd;
    std::sort(z.begin(), z.end());
    double d = 0.0;
    const double nf = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double cdf = 0.5 * std::erfc(-z[i] / std::numbers::sqrt2);
        d = std::max({d, (static_cast<double>(i) + 1.0) / nf - cdf, cdf - static_cast<double>(i) / nf});
    }
    return {d, kolmogorov_q(effective_lambda(nf, d))};
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    return {d, kolmogorov_q(effective_lambda(nx * ny / (nx + ny), d))};
}

double bonferroni_k(std::size_t m, double alpha, double minimum) {
    if (m == 0 || !(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("bonferroni_k: invalid family");
    const double tail = alpha / (2.0 * static_cast<double>(m));
    double lo = 0.0;
    double hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (0.5 * std::erfc(mid / std::numbers::sqrt2) > tail) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::max(minimum, 0.5 * (lo + hi));
}

VerificationReport compare(std::string name, double predicted, double estimated, double se, ToleranceRule rule) {
    VerificationReport rep;
    rep.name = std::move(name);
    rep.predicted = predicted;
    rep.estimated = estimated;
    rep.se = se;
    rep.rule = rule;
    rep.tolerance = rule.tolerance(se);
    rep.pass = std::abs(estimated - predicted) <= rep.tolerance;
    return rep;
}

VerificationReport compare(std::string name, double predicted, const SampleStats& stats, std::size_t column,
                           ToleranceRule rule) {
    auto rep = compare(std::move(name), predicted, stats.mean(column), stats.se_mean(column), rule);
    rep.seed = stats.seed();
    rep.replicates = stats.replicates();
    return rep;
}

}  // namespace gue_lab
