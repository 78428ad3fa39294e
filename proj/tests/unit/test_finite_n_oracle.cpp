#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gue_lab/char_poly.hpp"
#include "gue_lab/finite_n_oracle.hpp"

using namespace gue_lab;

namespace {

// Midpoint rule, independent of the library quadrature.
template <class F>
double midpoint(F&& f, double a, double b, int m) {
    const double h = (b - a) / m;
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += f(a + (i + 0.5) * h);
    return s * h;
}

}  // namespace

TEST_CASE("hermite functions match the closed forms for l <= 2") {
    const std::size_t n = 3;
    const double s = std::sqrt(2.0 * n);
    for (double x : {-1.2, -0.3, 0.0, 0.45, 1.7}) {
        const double u = s * x;
        const double h0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * u * u);
        const double scale = std::pow(2.0 * n, 0.25);
        CHECK(hermite_psi(n, 0, x) == doctest::Approx(scale * h0).epsilon(1e-13));
        CHECK(hermite_psi(n, 1, x) == doctest::Approx(scale * std::sqrt(2.0) * u * h0).epsilon(1e-13).scale(1.0));
        CHECK(hermite_psi(n, 2, x) == doctest::Approx(scale * (2 * u * u - 1) / std::sqrt(2.0) * h0).epsilon(1e-13).scale(1.0));
    }
}

TEST_CASE("hermite functions are orthonormal") {
    const std::size_t n = 20;
    for (std::size_t l : {0u, 5u, 19u, 20u}) {
        for (std::size_t m : {0u, 5u, 19u, 20u}) {
            const double ip = midpoint([&](double x) { return hermite_psi(n, l, x) * hermite_psi(n, m, x); }, -3.0, 3.0, 60000);
            CHECK(ip == doctest::Approx(l == m ? 1.0 : 0.0).epsilon(1e-9).scale(1.0));
        }
    }
}

TEST_CASE("hermite evaluation is finite far in the tail and guards the index") {
    CHECK(hermite_psi(1000, 999, 10.0) == 0.0);
    CHECK(std::isfinite(hermite_psi(1000, 1000, 1.05)));
    CHECK_THROWS_AS(hermite_psi(10, 100001, 0.0), std::out_of_range);
    const auto all = hermite_psi_all(30, 31, 0.4);
    REQUIRE(all.size() == 32);
    for (std::size_t l = 0; l < all.size(); ++l) CHECK(all[l] == doctest::Approx(hermite_psi(30, l, 0.4)).epsilon(1e-12).scale(1.0));
}

TEST_CASE("Christoffel-Darboux kernel equals the explicit sum") {
    const std::size_t n = 25;
    const KernelEvaluator ev(n);
    for (double x : {-0.9, -0.2, 0.33, 1.1}) {
        const auto psi = hermite_psi_all(n, n - 1, x);
        for (double y : {-0.7, 0.0, 0.33 + 1e-9, 0.8}) {
            const auto phy = hermite_psi_all(n, n - 1, y);
            double direct = 0.0;
            for (std::size_t l = 0; l < n; ++l) direct += psi[l] * phy[l];
            CHECK(kernel_K(ev, x, y) == doctest::Approx(direct).epsilon(1e-9).scale(1.0));
        }
        double diag = 0.0;
        for (double p : psi) diag += p * p;
        CHECK(kernel_K(ev, x, x) == doctest::Approx(diag).epsilon(1e-11));
    }
}

TEST_CASE("density integrates to one and N = 1 is Gaussian") {
    const KernelEvaluator ev(40);
    CHECK(midpoint([&](double x) { return density_rho(ev, x); }, -2.0, 2.0, 40000) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(density_rho(ev, 0.0) > 0.0);
    const KernelEvaluator one(1);
    for (double x : {0.0, 0.3, -1.1}) {
        CHECK(density_rho(one, x) == doctest::Approx(std::sqrt(2.0 / std::numbers::pi) * std::exp(-2.0 * x * x)).epsilon(1e-13));
    }
}

TEST_CASE("kernel is a reproducing projection") {
    const KernelEvaluator ev(12);
    for (auto [x, y] : {std::pair{0.1, -0.4}, std::pair{0.7, 0.7}, std::pair{-1.0, 0.2}}) {
        const double k2 = midpoint([&](double z) { return kernel_K(ev, x, z) * kernel_K(ev, z, y); }, -3.0, 3.0, 30000);
        CHECK(k2 == doctest::Approx(kernel_K(ev, x, y)).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("exact linear statistics reproduce closed-form GUE moments") {
    // Tr T_1 = Tr H ~ N(0, 1/4); Tr T_2 = 2 Tr H^2 - N has mean -N/2 and variance 1/2.
    auto t1 = [](double x) { return x; };
    auto t2 = [](double x) { return chebyshev_T(2, x); };
    for (std::size_t n : {1u, 7u, 50u}) {
        const KernelEvaluator ev(n);
        CHECK(exact_linear_stat_cov(ev, t1, t1).value == doctest::Approx(0.25).epsilon(1e-8));
        CHECK(exact_linear_stat_cov(ev, t2, t2).value == doctest::Approx(0.5).epsilon(1e-8));
        CHECK(std::abs(exact_linear_stat_cov(ev, t1, t2).value) < 1e-10);
        CHECK(std::abs(exact_linear_stat_mean(ev, t1).value) < 1e-10);
        CHECK(exact_linear_stat_mean(ev, t2).value == doctest::Approx(-0.5 * n).epsilon(1e-9));
    }
}

TEST_CASE("exact covariance is the same serially and in parallel") {
    const KernelEvaluator ev(30);
    auto f = [](double x) { return std::sin(3.0 * x); };
    OracleQuadSpec a;
    a.parallel = false;
    OracleQuadSpec b;
    b.parallel = true;
    CHECK(exact_linear_stat_cov(ev, f, f, a).value == exact_linear_stat_cov(ev, f, f, b).value);
}

TEST_CASE("unreachable tolerance raises") {
    const KernelEvaluator ev(30);
    OracleQuadSpec spec;
    spec.rel_tol = 1e-30;
    spec.abs_tol = 0.0;
    spec.max_panels = 16;
    auto f = [](double x) { return std::abs(x); };
    CHECK_THROWS_AS(exact_linear_stat_cov(ev, f, f, spec), QuadratureError);
}
