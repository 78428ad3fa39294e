#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gue_lab/limit_processes.hpp"
#include "gue_lab/stat_harness.hpp"

using namespace gue_lab;

namespace {

// 1/2 int_0^inf s^{-1-2H} (1 - cos ts) ds = -1/2 |t|^{2H} Gamma(-2H) cos(pi H).
double phi_H_eta0(double t, double h) {
    return -0.5 * std::pow(std::abs(t), 2 * h) * std::tgamma(-2 * h) * std::cos(std::numbers::pi * h);
}

// H = 1/2: 1/2 int e^{-as} (1 - cos ts) / s^2 ds with a = 2 eta.
double phi_half(double t, double eta) {
    const double a = 2 * eta;
    return 0.5 * (t * std::atan(t / a) - 0.5 * a * std::log1p(t * t / (a * a)));
}

}  // namespace

TEST_CASE("phi_H closed forms") {
    for (double t : {0.3, 1.0, 2.5}) {
        for (double h : {0.1, 0.25, 0.4, 0.7, 0.9}) {
            CHECK(phi_H(t, h, 0.0) == doctest::Approx(phi_H_eta0(t, h)).epsilon(1e-10));
        }
        CHECK(phi_H(t, 0.5, 0.0) == doctest::Approx(std::numbers::pi * t / 4).epsilon(1e-10));
        for (double eta : {0.2, 1.0}) {
            CHECK(phi_H(t, 0.5, eta) == doctest::Approx(phi_half(t, eta)).epsilon(1e-9));
            CHECK(phi_H(t, 0.5 + 2e-4, eta) == doctest::Approx(phi_half(t, eta)).epsilon(2e-3));
        }
    }
    CHECK(phi_H(0.0, 0.3, 1.0) == 0.0);
}

TEST_CASE("phi_H agrees with its quadrature for eta > 0") {
    for (double h : {0.15, 0.35, 0.5, 0.65, 0.85}) {
        for (double t : {0.5, 2.0}) {
            CHECK(phi_H(t, h, 0.5) == doctest::Approx(phi_H_quadrature(t, h, 0.5)).epsilon(1e-8));
        }
    }
}

TEST_CASE("B_0 covariance structure") {
    const double eta = 0.8;
    CHECK(phi0(1.3, eta) == doctest::Approx(0.25 * std::log(1.3 * 1.3 / (4 * eta * eta) + 1)));
    CHECK(cov_B0(0.0, 1.0, eta) == 0.0);
    CHECK(cov_B0(1.2, 1.2, eta) == doctest::Approx(2 * phi0(1.2, eta)));
    CHECK(cov_B0(0.4, -1.1, eta) == doctest::Approx(cov_B0(-1.1, 0.4, eta)));
    // Variance at t = 2 eta is 1/2 log 2.
    CHECK(cov_B0(2 * eta, 2 * eta, eta) == doctest::Approx(0.5 * std::numbers::ln2));
    const std::vector<double> ts{-2.0, -0.5, 0.0, 0.7, 1.9};
    const auto m = covariance_B0(ts, eta);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.entries);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("Cholesky sampler reproduces the covariance") {
    const std::vector<double> ts{0.0, 0.5, 1.0, 2.0};
    const CholeskyB0Sampler sampler(ts, 1.0);
    CHECK(sampler.jitter() == 0.0);
    Experiment exp{"B0", {"0", "0.5", "1", "2"}, [&](StreamTag tag) { return sampler.sample(tag); }};
    const auto stats = run_replicated(exp, 20000, 3, {});
    for (std::size_t i = 0; i < ts.size(); ++i) {
        CHECK(stats.column(0)[i] == 0.0);
        for (std::size_t j = 1; j <= i; ++j) {
            CHECK(std::abs(stats.covariance(i, j) - cov_B0(ts[i], ts[j], 1.0)) < 5 * stats.se_covariance(i, j));
        }
    }
    CHECK(sample_B0_cholesky(ts, 1.0, {3, 5}) == sampler.sample({3, 5}));
}

TEST_CASE("harmonizable sampler") {
    const std::vector<double> ts{-1.0, 0.0, 0.5, 2.0};
    const auto grid = HarmonizableGrid::defaults(ts, 1.0);
    const HarmonizableB0Sampler h(ts, 1.0, grid);
    CHECK(h.warnings().empty());
    CHECK(h.predicted_bias() < 1e-2);
    const auto dc = h.discrete_covariance();
    for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = 0; j < ts.size(); ++j) {
            CHECK(std::abs(dc(i, j) - cov_B0(ts[i], ts[j], 1.0)) <= h.predicted_bias() + 1e-15);
        }
    }
    CHECK(h.sample({1, 2})[1] == 0.0);
    Eigen::MatrixXd a;
    Eigen::MatrixXd b;
    h.sample_many(9, 0, 64, a, false);
    h.sample_many(9, 0, 64, b, true);
    CHECK(a == b);
    const HarmonizableB0Sampler coarse(ts, 1.0, HarmonizableGrid::make(5.0, 0.5));
    CHECK_FALSE(coarse.warnings().empty());
    CHECK_THROWS_AS(HarmonizableGrid::make(1.0, 2.0), std::invalid_argument);
}

TEST_CASE("F series covariance approaches the log kernel") {
    for (auto [x, y] : {std::pair{0.1, 0.6}, std::pair{-0.7, 0.2}}) {
        CHECK(F_series_covariance(x, y, 100000) == doctest::Approx(-0.5 * std::log(2 * std::abs(x - y))).epsilon(1e-3).scale(1.0));
    }
    const std::vector<double> xs{-0.5, 0.0, 0.5};
    CHECK(sample_F_series(xs, 50, {4, 4}) == sample_F_series(xs, 50, {4, 4}));
}
