#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gue_lab/experiments.hpp"
#include "gue_lab/rng.hpp"
#include "gue_lab/stat_harness.hpp"

using namespace gue_lab;

namespace {

double normal_quantile(double p) {
    // Bisection on erfc, independent of bonferroni_k's bracketing.
    double lo = -10.0;
    double hi = 10.0;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        (0.5 * std::erfc(-mid / std::numbers::sqrt2) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Experiment gaussian_experiment(std::size_t k) {
    std::vector<std::string> cols;
    for (std::size_t i = 0; i < k; ++i) cols.push_back("x" + std::to_string(i));
    return Experiment{"gauss", cols, [k](StreamTag tag) {
                          auto e = make_engine(tag);
                          std::normal_distribution<double> n;
                          std::vector<double> v(k);
                          for (auto& x : v) x = n(e);
                          return v;
                      }};
}

}  // namespace

TEST_CASE("Neumaier summation recovers cancelled terms") {
    NeumaierSum s;
    s.add(1.0);
    s.add(1e100);
    s.add(1.0);
    s.add(-1e100);
    CHECK(s.value() == 2.0);
}

TEST_CASE("sample statistics match direct formulas") {
    Eigen::MatrixXd data(5, 2);
    data << 1, 2, 2, 1, 3, 5, 4, 4, 10, 3;
    const SampleStats st({"a", "b"}, data, 1);
    CHECK(st.mean(0) == doctest::Approx(4.0));
    CHECK(st.variance(0) == doctest::Approx(12.5));
    CHECK(st.covariance(0, 1) == doctest::Approx((data.col(0).array() - 4.0).matrix().dot((data.col(1).array() - 3.0).matrix()) / 4.0));
    CHECK(st.se_mean(0) == doctest::Approx(std::sqrt(12.5 / 5)));
    CHECK(st.column_index("b") == 1);
    CHECK_THROWS_AS((void)st.column_index("c"), std::out_of_range);
    CHECK_THROWS_AS(SampleStats({"a"}, data, 1), std::invalid_argument);
}

TEST_CASE("replicated runs are identical serially and in parallel") {
    const auto exp = gaussian_experiment(3);
    const auto a = run_replicated(exp, 500, 42, {false, 0});
    const auto b = run_replicated(exp, 500, 42, {true, 0});
    CHECK(a.data() == b.data());
    const auto c = run_replicated(exp, 500, 43, {true, 0});
    CHECK(a.data() != c.data());
}

TEST_CASE("replicate failures report the smallest failing index") {
    Experiment exp{"fails", {"x"}, [](StreamTag tag) {
                       if (tag.replicate % 7 == 3) throw std::runtime_error("boom");
                       return std::vector<double>{1.0};
                   }};
    try {
        (void)run_replicated(exp, 100, 1, {true, 0});
        FAIL("expected ReplicateError");
    } catch (const ReplicateError& e) {
        CHECK(e.replicate() == 3);
    }
    Experiment wrong{"width", {"x", "y"}, [](StreamTag) { return std::vector<double>{1.0}; }};
    CHECK_THROWS_AS(run_replicated(wrong, 10, 1, {}), ReplicateError);
}

TEST_CASE("Kolmogorov distribution") {
    CHECK(kolmogorov_q(0.0) == 1.0);
    CHECK(kolmogorov_q(1.3581) == doctest::Approx(0.05).epsilon(1e-3));
    CHECK(kolmogorov_q(1.6276) == doctest::Approx(0.01).epsilon(1e-3));
    // Both series agree across the switch point.
    CHECK(kolmogorov_q(1.18 - 1e-9) == doctest::Approx(kolmogorov_q(1.18 + 1e-9)).epsilon(1e-8));
}

TEST_CASE("KS tests") {
    std::vector<double> q;
    for (int i = 0; i < 500; ++i) q.push_back(normal_quantile((i + 0.5) / 500));
    CHECK(ks_normality(q).p_value > 0.99);
    std::vector<double> expo;
    for (int i = 0; i < 500; ++i) expo.push_back(-std::log1p(-(i + 0.5) / 500));
    CHECK(ks_normality(expo).p_value < 1e-3);
    CHECK_THROWS_AS(ks_normality(std::vector<double>(50, 1.0)), std::invalid_argument);
    CHECK(ks_two_sample(q, q).statistic == 0.0);
    std::vector<double> shifted = q;
    for (auto& x : shifted) x += 1.0;
    CHECK(ks_two_sample(q, shifted).p_value < 1e-6);
}

TEST_CASE("Bonferroni multipliers") {
    CHECK(bonferroni_k(1) == 3.0);
    CHECK(bonferroni_k(1, 0.01, 0.0) == doctest::Approx(normal_quantile(1 - 0.005)).epsilon(1e-9));
    CHECK(bonferroni_k(28) == doctest::Approx(normal_quantile(1 - 0.01 / 56)).epsilon(1e-9));
    CHECK(bonferroni_k(28) > bonferroni_k(8));
    CHECK_THROWS_AS(bonferroni_k(0), std::invalid_argument);
}

TEST_CASE("family-wise false-failure rate of the tolerance rule stays near alpha") {
    // Null calibration: 28 true-zero means per trial, rule k = bonferroni_k(28).
    constexpr std::size_t kFamily = 28;
    constexpr int kTrials = 1500;
    const auto exp = gaussian_experiment(kFamily);
    const double k = bonferroni_k(kFamily);
    int failures = 0;
    for (int t = 0; t < kTrials; ++t) {
        const auto st = run_replicated(exp, 200, derive_seed(99, 0, t), {});
        bool pass = true;
        for (std::size_t i = 0; i < kFamily; ++i) pass = pass && compare("m", 0.0, st, i, {k, 0.0}).pass;
        failures += pass ? 0 : 1;
    }
    // Expected rate <= 0.01; five binomial SDs of slack.
    CHECK(static_cast<double>(failures) / kTrials < 0.01 + 5 * std::sqrt(0.01 * 0.99 / kTrials));
}

TEST_CASE("compare and tolerance rules") {
    const auto r = compare("x", 1.0, 1.2, 0.1, {3.0, 0.0});
    CHECK(r.pass);
    CHECK(r.tolerance == doctest::Approx(0.3));
    CHECK_FALSE(compare("x", 1.0, 1.2, 0.01, {3.0, 0.1}).pass);
    CHECK(compare("x", 1.0, 1.2, 0.01, {3.0, 0.25}).pass);
}

TEST_CASE("derived seeds are distinct") {
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t id = 0; id <= 10; ++id) {
        for (std::uint64_t i = 0; i < 20; ++i) seeds.push_back(derive_seed(7, id, i));
    }
    std::sort(seeds.begin(), seeds.end());
    CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
    CHECK(derive_seed(7, 3) == derive_seed(7, 3, 0));
}

TEST_CASE("deterministic criteria pass and unknown ids are rejected") {
    SuiteOptions opt;
    CHECK(run_criterion(6, opt).pass);
    CHECK(run_criterion(8, opt).pass);
    CHECK_THROWS(run_criterion(11, opt));
}
