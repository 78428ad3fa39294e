#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gue_lab/asymptotics.hpp"
#include "gue_lab/limit_processes.hpp"
#include "gue_lab/special_functions.hpp"

using namespace gue_lab;

TEST_CASE("Barnes G at integers and one half") {
    // G(n) = 0! 1! ... (n-2)!
    const double factorial_products[] = {0.0, 0.0, 0.0, 0.0, std::log(2.0), std::log(12.0), std::log(288.0)};
    for (int n = 1; n <= 6; ++n) CHECK(barnes_g_log(n) == doctest::Approx(factorial_products[n]).epsilon(1e-12).scale(1.0));
    const double half = std::log(2.0) / 24 + 0.125 - 0.25 * std::log(std::numbers::pi) - 1.5 * std::log(kGlaisher);
    CHECK(barnes_g_log(0.5) == doctest::Approx(half).epsilon(1e-12));
    CHECK_THROWS_AS(barnes_g_log(0.0), std::domain_error);
}

TEST_CASE("Barnes G functional equation") {
    for (double z : {0.3, 1.7, 4.2, 18.5, 19.5, 35.0}) {
        CHECK(barnes_g_log(z + 1) - barnes_g_log(z) == doctest::Approx(std::lgamma(z)).epsilon(1e-11).scale(1.0));
    }
}

TEST_CASE("Krasovsky constant") {
    CHECK(log_krasovsky_constant(0.0) == 0.0);
    CHECK(log_krasovsky_constant(1.0) == doctest::Approx(std::log(4.0)));
    const double g32 = barnes_g_log(0.5) + std::lgamma(0.5);
    CHECK(log_krasovsky_constant(0.5) == doctest::Approx(0.5 * std::log(2.0) + 2 * g32));
    CHECK_THROWS(log_krasovsky_constant(-0.6));
}

TEST_CASE("variance is the second derivative of the product formula") {
    for (double x : {0.0, 0.4, -0.8}) {
        const double pts[] = {x};
        auto f = [&](double a) {
            const double al[] = {a};
            return log_krasovsky_mgf(pts, al, 300.0);
        };
        const double h = 1e-3;
        CHECK(f(0.0) == doctest::Approx(0.0).scale(1.0));
        const double second = (f(h) - 2 * f(0.0) + f(-h)) / (h * h);
        CHECK(second == doctest::Approx(krasovsky_variance(x, 300.0)).epsilon(1e-5));
    }
    const double expected = 0.5 * std::log(64.0) + std::log(2.0) + 0.5 * (1 + std::numbers::egamma);
    CHECK(krasovsky_variance(0.0, 64.0) == doctest::Approx(expected));
}

TEST_CASE("conformal map and g function against the semicircle closed form") {
    for (cplx z : {cplx(0.2, 0.3), cplx(-0.9, 0.01), cplx(2.0, 0.0), cplx(0.0, -1.5), cplx(-3.0, 0.5)}) {
        // Independent branch: the root of c^2 - 2zc + 1 with |c| > 1.
        const cplx r = std::sqrt(z * z - 1.0);
        const cplx c = std::abs(z + r) > 1.0 ? z + r : z - r;
        CHECK(std::abs(conformal_c(z) - c) < 1e-12);
        CHECK(std::abs(conformal_c(z) + 1.0 / conformal_c(z) - 2.0 * z) < 1e-12);
        const cplx g = std::log(c / 2.0) + 1.0 / (2.0 * c * c);
        CHECK(std::abs(g_function(z).real() - g.real()) < 1e-12);
    }
}

TEST_CASE("Szego function") {
    const auto s = SingularitySet::make({cplx(0.1, 0.2), cplx(-0.4, -0.3)}, {0.7, -0.2}, false);
    CHECK(std::abs(szego_D(cplx(1e7, 1e7), s) - szego_D_infinity(s)) < 1e-6);
    for (double x : {-0.8, 0.0, 0.55}) {
        const double y = std::sqrt(1 - x * x);
        const cplx prod = szego_D_of_c(cplx(x, y), s) * szego_D_of_c(cplx(x, -y), s);
        CHECK(std::abs(prod - szego_weight(x, s)) < 1e-12);
        const double w = std::pow(std::abs(cplx(x) - s.points[0]), 0.7) * std::pow(std::abs(cplx(x) - s.points[1]), -0.2);
        CHECK(szego_weight(x, s) == doctest::Approx(w).epsilon(1e-13));
    }
    CHECK_THROWS(SingularitySet::make({cplx(0.1, 0.2)}, {0.5}, true));
    CHECK_THROWS(SingularitySet::make({cplx(0.1, 0.0)}, {0.5}, false));
}

TEST_CASE("mesoscopic prediction") {
    const auto cfg = MesoscopicConfig::make(0.0, 1.0, 0.5);
    const std::vector<double> taus{0.5, 1.0, 2.0};
    const std::vector<double> alphas{0.3, -0.2, 0.1};
    const auto set = SingularitySet::mesoscopic(cfg, 10.0, taus, alphas);
    REQUIRE(set.size() == 4);
    CHECK(set.alphas.back() == doctest::Approx(-0.2));
    const auto p = meso_charfunc_prediction(cfg, taus, alphas, 100);
    double q = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(p.covariance(i, j) == doctest::Approx(cov_B0(taus[i], taus[j], 1.0)));
            q += 0.5 * alphas[i] * alphas[j] * p.covariance(i, j);
        }
        CHECK(p.means[i] == doctest::Approx(-predicted_mean_w(cfg, -taus[i], 100)).epsilon(1e-9).scale(1.0));
    }
    CHECK(p.quadratic_form == doctest::Approx(q));
    CHECK(predicted_mean_w(cfg, 0.0, 100) == 0.0);
}

TEST_CASE("identity validators") {
    CHECK(verify_log_integral_identity(1.3, 0.2) < 1e-10);
    CHECK(log_integral_identity_error(1.3, 0.2, 4) > log_integral_identity_error(1.3, 0.2, 64));
    CHECK(verify_log_chebyshev_identity(0.1, 0.5, 20000) < 5e-3);
    const std::vector<double> ds{50, 100, 200, 400, 800};
    const auto rep = verify_szego_asymptotic(0.0, 1.0, 1.0, ds);
    CHECK(rep.slope < -0.8);
    CHECK(rep.slope > -1.2);
    CHECK(rep.target == doctest::Approx(0.25 * std::log(1.0 + 4.0)));
}
