// Serial reference paths against their OpenMP counterparts. Each pair must
// produce identical numbers; the table reports the wall-clock ratio.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gue_lab/char_poly.hpp"
#include "gue_lab/finite_n_oracle.hpp"
#include "gue_lab/gue_sampler.hpp"
#include "gue_lab/limit_processes.hpp"
#include "gue_lab/stat_harness.hpp"

using namespace gue_lab;

namespace {

template <class F>
double best_of(int repeats, F&& f) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

bool row(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-28s %10.4f %10.4f %8.2fx  %s\n", name, serial, parallel, serial / parallel,
                identical ? "identical" : "MISMATCH");
    return identical;
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("threads: %d, best of %d\n", threads, repeats);
    std::printf("%-28s %10s %10s %9s\n", "kernel", "serial s", "openmp s", "speedup");
    bool ok = true;

    {
        const auto cfg = MesoscopicConfig::make(0.0, 1.0, 0.5);
        const std::vector<double> taus{0.0, 0.5, 1.0, 2.0};
        Experiment exp{"meso", {"a", "b", "c", "d"},
                       [&](StreamTag tag) { return meso_path(sample_spectrum_fast(512, tag), cfg, taus); }};
        Eigen::MatrixXd a;
        Eigen::MatrixXd b;
        const double ts = best_of(repeats, [&] { a = run_replicated(exp, 400, 1, {false, 0}).data(); });
        const double tp = best_of(repeats, [&] { b = run_replicated(exp, 400, 1, {true, 0}).data(); });
        ok = row("run_replicated (N=512)", ts, tp, a == b) && ok;
    }
    {
        const KernelEvaluator ev(100);
        auto f = [](double x) { return chebyshev_T(3, x); };
        OracleQuadSpec s;
        s.parallel = false;
        OracleQuadSpec p;
        p.parallel = true;
        double a = 0.0;
        double b = 0.0;
        const double ts = best_of(repeats, [&] { a = exact_linear_stat_cov(ev, f, f, s).value; });
        const double tp = best_of(repeats, [&] { b = exact_linear_stat_cov(ev, f, f, p).value; });
        ok = row("exact_linear_stat_cov (N=100)", ts, tp, a == b) && ok;
    }
    {
        std::vector<double> times;
        for (int i = 0; i < 9; ++i) times.push_back(-2.0 + 0.5 * i);
        const HarmonizableB0Sampler h(times, 1.0, HarmonizableGrid::defaults(times, 1.0));
        Eigen::MatrixXd a;
        Eigen::MatrixXd b;
        const double ts = best_of(repeats, [&] { h.sample_many(5, 0, 2000, a, false); });
        const double tp = best_of(repeats, [&] { h.sample_many(5, 0, 2000, b, true); });
        ok = row("harmonizable sample_many", ts, tp, a == b) && ok;
    }
    return ok ? 0 : 1;
}
