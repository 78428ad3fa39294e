#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gue_lab/gue_sampler.hpp"
#include "gue_lab/rng.hpp"
#include "gue_lab/stat_harness.hpp"

using namespace gue_lab;

TEST_CASE("Philox4x32-10 known-answer vectors") {
    using B = Philox4x32::Block;
    using K = Philox4x32::Key;
    CHECK(Philox4x32::encrypt(B{0, 0, 0, 0}, K{0, 0}) == B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::encrypt(B{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
          B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::encrypt(B{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
          B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("engine streams are reproducible and distinct") {
    auto a = make_engine({7, 3});
    auto b = make_engine({7, 3});
    auto c = make_engine({7, 4});
    auto d = make_engine({7, 3}, 1);
    int same_c = 0;
    int same_d = 0;
    for (int i = 0; i < 64; ++i) {
        const auto x = a();
        CHECK(x == b());
        same_c += (x == c());
        same_d += (x == d());
    }
    CHECK(same_c == 0);
    CHECK(same_d == 0);
}

TEST_CASE("discard_blocks matches drawing two outputs per block") {
    auto a = make_engine({11, 0});
    auto b = make_engine({11, 0});
    for (int i = 0; i < 10; ++i) a();
    b.discard_blocks(5);
    for (int i = 0; i < 8; ++i) CHECK(a() == b());
}

TEST_CASE("uniform bits look uniform") {
    auto e = make_engine({1, 0});
    std::uniform_real_distribution<double> u(0.0, 1.0);
    NeumaierSum s;
    NeumaierSum q;
    constexpr int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double x = u(e);
        s.add(x);
        q.add(x * x);
    }
    CHECK(std::abs(s.value() / n - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(std::abs(q.value() / n - 1.0 / 3.0) < 5.0 * std::sqrt(4.0 / 45.0 / n));
}

TEST_CASE("dense GUE sample is Hermitian with the right scale") {
    const std::size_t n = 40;
    NeumaierSum tr2;
    constexpr int reps = 400;
    for (int r = 0; r < reps; ++r) {
        const auto h = sample_gue_dense(n, {5, static_cast<std::uint64_t>(r)});
        CHECK(h.entries().isApprox(h.entries().adjoint()));
        for (std::size_t j = 0; j < n; ++j) CHECK(h(j, j).imag() == 0.0);
        tr2.add(h.trace_of_square());
    }
    // E Tr H^2 = N^2 / (4N) under exp(-2N Tr H^2); Var Tr H^2 = 1/8.
    CHECK(std::abs(tr2.value() / reps - n / 4.0) < 5.0 * std::sqrt(0.125 / reps));
}

TEST_CASE("eigenvalues are sorted and preserve the trace") {
    const auto h = sample_gue_dense(30, {9, 1});
    const auto s = eigenvalues(h);
    CHECK(std::is_sorted(s.values.begin(), s.values.end()));
    double sum = 0.0;
    double sum2 = 0.0;
    for (double x : s.values) {
        sum += x;
        sum2 += x * x;
    }
    CHECK(sum == doctest::Approx(h.trace()).epsilon(1e-12));
    CHECK(sum2 == doctest::Approx(h.trace_of_square()).epsilon(1e-12));
}

TEST_CASE("fast sampler matches the dense moments of Tr H and Tr H^2") {
    const std::size_t n = 16;
    constexpr int reps = 4000;
    NeumaierSum t1;
    NeumaierSum t1sq;
    NeumaierSum t2;
    for (int r = 0; r < reps; ++r) {
        const auto s = sample_spectrum_fast(n, {21, static_cast<std::uint64_t>(r)});
        CHECK(s.n() == n);
        double a = 0.0;
        double b = 0.0;
        for (double x : s.values) {
            a += x;
            b += x * x;
        }
        t1.add(a);
        t1sq.add(a * a);
        t2.add(b);
    }
    // Tr H ~ N(0, 1/4); E Tr H^2 = N/4 with variance 1/8.
    CHECK(std::abs(t1.value() / reps) < 5.0 * std::sqrt(0.25 / reps));
    CHECK(std::abs(t1sq.value() / reps - 0.25) < 5.0 * 0.25 * std::sqrt(2.0 / reps));
    CHECK(std::abs(t2.value() / reps - n / 4.0) < 5.0 * std::sqrt(0.125 / reps));
}

TEST_CASE("tridiagonal eigenvalues agree with a dense solve") {
    const std::vector<double> diag{0.3, -1.2, 0.7, 2.0, -0.4};
    const std::vector<double> off{0.5, 1.1, -0.2, 0.9};
    const auto ev = tridiagonal_eigenvalues(diag, off);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(5, 5);
    for (int i = 0; i < 5; ++i) m(i, i) = diag[i];
    for (int i = 0; i < 4; ++i) m(i, i + 1) = m(i + 1, i) = off[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    for (int i = 0; i < 5; ++i) CHECK(ev[i] == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-12));
}
