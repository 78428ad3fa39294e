#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "gue_lab/char_poly.hpp"

using namespace gue_lab;

namespace {

EigenvalueSample spectrum(std::vector<double> v) { return EigenvalueSample{std::move(v), {}}; }

}  // namespace

TEST_CASE("chebyshev_T matches the trigonometric and hyperbolic forms") {
    for (int n = 0; n <= 30; ++n) {
        for (double x : {-0.97, -0.5, 0.0, 0.31, 0.99}) {
            CHECK(chebyshev_T(n, x) == doctest::Approx(std::cos(n * std::acos(x))).epsilon(1e-12).scale(1.0));
        }
        for (double x : {1.05, 1.7}) {
            CHECK(chebyshev_T(n, x) == doctest::Approx(std::cosh(n * std::acosh(x))).epsilon(1e-12));
            CHECK(chebyshev_T(n, -x) == doctest::Approx((n % 2 ? -1.0 : 1.0) * std::cosh(n * std::acosh(x))).epsilon(1e-12));
        }
    }
}

TEST_CASE("log_abs_charpoly sums the log distances and rejects collisions") {
    const auto s = spectrum({-0.5, 0.1, 0.8});
    const double x = 0.3;
    CHECK(log_abs_charpoly(s, x) == doctest::Approx(-(std::log(0.8) + std::log(0.2) + std::log(0.5))));
    CHECK_THROWS_AS(log_abs_charpoly(s, 0.1), SingularInputError);
}

TEST_CASE("chebyshev traces and a-coefficients") {
    const auto s = spectrum({-0.9, -0.2, 0.4, 0.75});
    const auto tr = chebyshev_traces(s, 6);
    for (int n = 0; n <= 6; ++n) {
        double direct = 0.0;
        for (double x : s.values) direct += std::cos(n * std::acos(x));
        CHECK(tr[n] == doctest::Approx(direct).epsilon(1e-13).scale(1.0));
        CHECK(chebyshev_trace(s, n) == doctest::Approx(direct).epsilon(1e-13).scale(1.0));
        if (n >= 1) CHECK(chebyshev_a_coefficient(s, n) == doctest::Approx(2.0 / std::sqrt(n) * direct).scale(1.0));
    }
}

TEST_CASE("Chebyshev-Fourier series reconstructs D_N with outside eigenvalues") {
    // All eigenvalues off [-1, 1]: the series converges geometrically.
    const auto s = spectrum({-1.3, 1.1, 1.5});
    const auto series = cheb_fourier_coeffs(s, 400);
    for (double x : {-0.8, -0.1, 0.2, 0.65, 0.95}) {
        CHECK(series.evaluate(x) == doctest::Approx(log_abs_charpoly(s, x)).epsilon(1e-10));
    }
    CHECK(series.n_log2_term == doctest::Approx(3.0 * std::numbers::ln2));
}

TEST_CASE("Chebyshev-Fourier series with interior eigenvalues") {
    const auto s = spectrum({-0.6, -0.05, 0.5, 1.02});
    const auto series = cheb_fourier_coeffs(s, 4096);
    for (double x : {-0.9, -0.3, 0.25, 0.8}) {
        CHECK(std::abs(series.evaluate(x) - log_abs_charpoly(s, x)) < 1e-2);
    }
}

TEST_CASE("edge corrections vanish inside the interval") {
    for (int k = 0; k < 6; ++k) {
        CHECK(edge_correction(k, 0.4, +1) == 0.0);
        CHECK(edge_correction(k, -0.4, -1) == 0.0);
        CHECK(edge_correction(k, 1.4, -1) == 0.0);
    }
    CHECK(edge_correction(3, 1.4, +1) != 0.0);
}

TEST_CASE("mesoscopic increments") {
    const auto cfg = MesoscopicConfig::make(0.1, 0.7, 0.5);
    const auto s = spectrum({-0.7, -0.2, 0.05, 0.3, 0.9});
    const double d = cfg.zoom(s.n());
    CHECK(d == doctest::Approx(std::sqrt(5.0)));
    CHECK(meso_increment(s, cfg, 0.0) == 0.0);
    const double tau = 0.8;
    const double e = cfg.eta / d;
    double direct = 0.0;
    for (double x : s.values) {
        direct += 0.5 * (std::log((x - 0.1) * (x - 0.1) + e * e) -
                         std::log((x - 0.1 + tau / d) * (x - 0.1 + tau / d) + e * e));
    }
    CHECK(meso_increment(s, cfg, tau) == doctest::Approx(direct).epsilon(1e-13));
    const std::vector<double> taus{0.0, 0.3, tau, 2.0};
    const auto path = meso_path(s, cfg, taus);
    for (std::size_t i = 0; i < taus.size(); ++i) {
        CHECK(path[i] == doctest::Approx(meso_increment(s, cfg, taus[i])).epsilon(1e-13).scale(1.0));
    }
    CHECK_THROWS_AS(MesoscopicConfig::make(1.0, 1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(MesoscopicConfig::make(0.0, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(MesoscopicConfig::make(0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("bump functions") {
    const auto xi = TestFunction::make(2.0, 1.0);
    CHECK(xi(2.0) == doctest::Approx(1.0));
    CHECK(xi(1.0) == 0.0);
    CHECK(xi(3.5) == 0.0);
    // Inner product oracle: plain midpoint rule on a fine grid.
    const auto b = TestFunction::make(2.5, 1.0, 0.5);
    double mid = 0.0;
    const int m = 200000;
    const double h = 2.5 / m;
    for (int i = 0; i < m; ++i) {
        const double s = 1.0 + (i + 0.5) * h;
        mid += xi(s) * b(s) * h;
    }
    CHECK(bump_inner_product(xi, b) == doctest::Approx(mid).epsilon(1e-8));
    CHECK_THROWS_AS(TestFunction::make(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("smeared coefficient routes agree") {
    const auto cfg = MesoscopicConfig::make(0.0, 1.0, 0.5);
    const auto s = spectrum({-0.8, -0.35, -0.1, 0.15, 0.4, 0.85});
    const auto xi = TestFunction::make(2.0, 1.0);
    const auto both = smeared_coeff_c(s, cfg, xi);
    CHECK(std::abs(both.value - both.integral_route) < 1e-7);
    const SmearedTransform f(xi, 1.6 * cfg.zoom(s.n()));
    CHECK(std::abs(smeared_coeff_c(s, cfg, f) - both.value) < 1e-8);
    // f at a single point against the adaptive transform.
    CHECK(std::abs(f(0.7) - bump_transform(xi, 0.7)) < 1e-8);
}

TEST_CASE("fourier_coeff_b direct sum") {
    const auto cfg = MesoscopicConfig::make(0.2, 1.0, 0.5);
    const auto s = spectrum({-0.5, 0.1, 0.6, 0.9});
    const double d = cfg.zoom(4);
    std::complex<double> direct = 0.0;
    for (double x : s.values) direct += std::exp(std::complex<double>(0.0, -1.7 * d * (x - 0.2)));
    direct /= std::sqrt(1.7);
    CHECK(std::abs(fourier_coeff_b(s, cfg, 1.7) - direct) < 1e-13);
}
