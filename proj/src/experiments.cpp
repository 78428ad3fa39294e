#include "gue_lab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gue_lab/asymptotics.hpp"
#include "gue_lab/char_poly.hpp"
#include "gue_lab/finite_n_oracle.hpp"
#include "gue_lab/gue_sampler.hpp"
#include "gue_lab/limit_processes.hpp"
#include "gue_lab/special_functions.hpp"

namespace gue_lab {

Check from_report(const VerificationReport& rep) {
    return Check{rep.name, "abs_diff", rep.predicted, rep.estimated, rep.se, rep.tolerance, rep.pass};
}

Check less_than(std::string name, double value, double bound) {
    return Check{std::move(name), "less", 0.0, value, 0.0, bound, value < bound};
}

Check greater_than(std::string name, double value, double bound) {
    return Check{std::move(name), "greater", 0.0, value, 0.0, bound, value > bound};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t id, std::uint64_t index) {
    // splitmix64 finalizer over a mixed word.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (id * 0x10001ULL + index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

using Clock = std::chrono::steady_clock;

std::size_t reps_or(const SuiteOptions& opt, std::size_t def) { return opt.reps.value_or(def); }

RunOptions run_options(const SuiteOptions& opt) { return RunOptions{opt.parallel, 0}; }

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

// Mean and standard error of a per-replicate derived series.
struct SeriesStat {
    double mean = 0.0;
    double se = 0.0;
};

SeriesStat series_stat(const std::vector<double>& v) {
    NeumaierSum s;
    for (double x : v) s.add(x);
    const double n = static_cast<double>(v.size());
    const double m = s.value() / n;
    NeumaierSum q;
    for (double x : v) q.add((x - m) * (x - m));
    return {m, std::sqrt(q.value() / (n - 1.0) / n)};
}

// ---------------------------------------------------------------------------

CriterionResult criterion_variance_growth(const SuiteOptions& opt) {
    CriterionResult res;
    res.title = "Var D_N(0) grows like 1/2 log N";
    const std::size_t reps = reps_or(opt, 2000);
    const std::size_t sizes[] = {64, 128, 256};
    double var[3];
    double se[3];
    for (int i = 0; i < 3; ++i) {
        const std::size_t n = sizes[i];
        Experiment exp{"D_N(0) at N=" + std::to_string(n), {"D"}, [n](StreamTag tag) {
                           return std::vector<double>{log_abs_charpoly(sample_spectrum_fast(n, tag), 0.0)};
                       }};
        const auto stats = run_replicated(exp, reps, derive_seed(opt.seed, 1, i), run_options(opt));
        var[i] = stats.variance(0);
        se[i] = stats.se_covariance(0, 0);
        res.notes.push_back("Var D_" + std::to_string(n) + "(0) = " + fmt(var[i]) + " +- " + fmt(se[i]));
    }
    const double k = bonferroni_k(2);
    for (int i = 0; i + 1 < 3; ++i) {
        const double diff_se = std::sqrt(se[i] * se[i] + se[i + 1] * se[i + 1]);
        res.checks.push_back(from_report(compare("Var(N=" + std::to_string(sizes[i + 1]) + ") - Var(N=" +
                                                     std::to_string(sizes[i]) + ")",
                                                 0.5 * std::numbers::ln2, var[i + 1] - var[i], diff_se, {k, 0.05})));
    }
    res.replicates = reps;
    return res;
}

CriterionResult criterion_chebyshev_clt(const SuiteOptions& opt) {
    CriterionResult res;
    res.title = "Chebyshev-trace CLT at N=256";
    const std::size_t reps = reps_or(opt, 4000);
    constexpr int kOrders = 8;
    std::vector<std::string> cols;
    for (int n = 1; n <= kOrders; ++n) cols.push_back("a_" + std::to_string(n));
    Experiment exp{"a_{n,N}", cols, [](StreamTag tag) {
                       const auto s = sample_spectrum_fast(256, tag);
                       const auto tr = chebyshev_traces(s, kOrders);
                       std::vector<double> out;
                       for (int n = 1; n <= kOrders; ++n) out.push_back(2.0 / std::sqrt(double(n)) * tr[n]);
                       return out;
                   }};
    const auto stats = run_replicated(exp, reps, derive_seed(opt.seed, 2), run_options(opt));
    const double alpha = 0.01 / kOrders;
    const double k_var = bonferroni_k(kOrders);
    const double k_corr = bonferroni_k(kOrders * (kOrders - 1) / 2);
    for (std::size_t i = 0; i < kOrders; ++i) {
        if (stats.replicates() >= 100) {
            const auto col = stats.column(i);
            res.checks.push_back(greater_than("KS normality p-value " + cols[i], ks_normality(col).p_value, alpha));
        }
        res.checks.push_back(
            from_report(compare("Var " + cols[i], 1.0, stats.variance(i), stats.se_covariance(i, i), {k_var, 0.0})));
    }
    for (std::size_t i = 0; i < kOrders; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            res.checks.push_back(from_report(compare("Corr(" + cols[j] + ", " + cols[i] + ")", 0.0,
                                                     stats.correlation(i, j), stats.se_correlation(i, j), {k_corr, 0.0})));
        }
    }
    res.replicates = reps;
    return res;
}

CriterionResult criterion_meso_covariance(const SuiteOptions& opt) {
    CriterionResult res;
    res.title = "Mesoscopic covariance at N=1024";
    const std::size_t reps = reps_or(opt, 10000);
    const std::vector<double> taus{0.0, 0.5, 1.0, 2.0};
    const auto cfg = MesoscopicConfig::make(0.0, 1.0, 0.5);
    Experiment exp{"W_N(tau)", {"W(0)", "W(0.5)", "W(1)", "W(2)"}, [&](StreamTag tag) {
                       return meso_path(sample_spectrum_fast(1024, tag), cfg, taus);
                   }};
    const auto stats = run_replicated(exp, reps, derive_seed(opt.seed, 3), run_options(opt));
    const double k = bonferroni_k(taus.size() * (taus.size() + 1) / 2);
    for (std::size_t i = 0; i < taus.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            res.checks.push_back(from_report(compare("Cov(W(" + fmt(taus[j]) + "), W(" + fmt(taus[i]) + "))",
                                                     cov_B0(taus[i], taus[j], cfg.eta), stats.covariance(i, j),
                                                     stats.se_covariance(i, j), {k, 0.05})));
        }
    }
    res.replicates = reps;
    return res;
}

CriterionResult criterion_white_noise(const SuiteOptions& opt) {
    CriterionResult res;
    res.title = "White-noise limit of smeared Fourier coefficients at N=512";
    const std::size_t reps = reps_or(opt, 10000);
    constexpr std::size_t kN = 512;
    const auto cfg = MesoscopicConfig::make(0.0, 1.0, 0.5);
    const double d = cfg.zoom(kN);
    const TestFunction xi1 = TestFunction::make(2.0, 1.0);
    const TestFunction xi2 = TestFunction::make(5.0, 1.0);
    const SmearedTransform f1(xi1, 1.6 * d, 1e-9);
    const SmearedTransform f2(xi2, 1.6 * d, 1e-9);

    Experiment exp{"c_N(xi)", {"re c1", "im c1", "re c2", "im c2"}, [&](StreamTag tag) {
                       const auto s = sample_spectrum_fast(kN, tag);
                       for (double x : s.values) {
                           if (std::abs(d * (x - cfg.x0)) > 1.6 * d) {
                               throw std::runtime_error("eigenvalue outside the tabulated transform range");
                           }
                       }
                       const auto c1 = smeared_coeff_c(s, cfg, f1);
                       const auto c2 = smeared_coeff_c(s, cfg, f2);
                       return std::vector<double>{c1.real(), c1.imag(), c2.real(), c2.imag()};
                   }};
    const auto stats = run_replicated(exp, reps, derive_seed(opt.seed, 4), run_options(opt));
    const auto& data = stats.data();
    const auto r = data.rows();

    std::vector<std::complex<double>> c[2];
    for (int j = 0; j < 2; ++j) {
        const std::complex<double> m(stats.mean(2 * j), stats.mean(2 * j + 1));
        for (Eigen::Index i = 0; i < r; ++i) c[j].emplace_back(std::complex<double>(data(i, 2 * j), data(i, 2 * j + 1)) - m);
    }
    const TestFunction* bumps[2] = {&xi1, &xi2};
    // Families: covariance entries, relation entries, means (real and imaginary parts each).
    const double k_gamma = bonferroni_k(6);
    const double k_rel = bonferroni_k(6);
    const double k_mean = bonferroni_k(4);
    auto add_complex = [&](const std::string& name, std::complex<double> predicted, auto product, double k,
                           double floor) {
        std::vector<double> re;
        std::vector<double> im;
        for (Eigen::Index i = 0; i < r; ++i) {
            const auto p = product(i);
            re.push_back(p.real());
            im.push_back(p.imag());
        }
        const auto sr = series_stat(re);
        const auto si = series_stat(im);
        res.checks.push_back(from_report(compare("Re " + name, predicted.real(), sr.mean, sr.se, {k, floor})));
        res.checks.push_back(from_report(compare("Im " + name, predicted.imag(), si.mean, si.se, {k, floor})));
    };
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k <= j; ++k) {
            const std::string idx = std::to_string(k + 1) + std::to_string(j + 1);
            add_complex("Gamma_" + idx, bump_inner_product(*bumps[k], *bumps[j]),
                        [&](Eigen::Index i) { return c[k][i] * std::conj(c[j][i]); }, k_gamma, 0.05);
            add_complex("relation_" + idx, 0.0, [&](Eigen::Index i) { return c[k][i] * c[j][i]; }, k_rel, 0.0);
        }
    }
    for (int j = 0; j < 4; ++j) {
        res.checks.push_back(from_report(compare(stats.columns()[j] + " mean", 0.0, stats, j, {k_mean, 0.0})));
    }
    res.notes.push_back("d_N = " + fmt(d) + ", transform nodes " + std::to_string(f1.nodes()) + " and " +
                        std::to_string(f2.nodes()));
    res.replicates = reps;
    return res;
}

CriterionResult criterion_oracle(const SuiteOptions& opt) {
    CriterionResult res;
    res.title = "Exact finite-N covariance vs Monte Carlo at N=50";
    const std::size_t reps = reps_or(opt, 4000);
    constexpr std::size_t kN = 50;
    const KernelEvaluator ev(kN);
    OracleQuadSpec spec;
    spec.parallel = opt.parallel;

    const double k = bonferroni_k(2);
    Experiment exp{"Tr T_n", {"Tr T_2", "Tr T_3"}, [](StreamTag tag) {
                       const auto tr = chebyshev_traces(sample_spectrum_fast(kN, tag), 3);
                       return std::vector<double>{tr[2], tr[3]};
                   }};
    const auto stats = run_replicated(exp, reps, derive_seed(opt.seed, 5), run_options(opt));
    for (int n = 2; n <= 3; ++n) {
        auto tn = [n](double x) { return chebyshev_T(n, x); };
        const auto exact = exact_linear_stat_cov(ev, tn, tn, spec);
        const std::size_t col = static_cast<std::size_t>(n - 2);
        res.checks.push_back(from_report(compare("Var Tr T_" + std::to_string(n) + " exact vs MC", exact.value,
                                                 stats.variance(col), stats.se_covariance(col, col), {k, 0.0})));
        res.checks.push_back(less_than("|exact Var Tr T_" + std::to_string(n) + " - n/4|",
                                       std::abs(exact.value - n / 4.0), 0.1));
        res.notes.push_back("exact Var Tr T_" + std::to_string(n) + " = " + fmt(exact.value) + " (quadrature error " +
                            fmt(exact.error_estimate) + ", tail " + fmt(exact.tail_bound) + ")");
    }
    res.replicates = reps;
    return res;
}

CriterionResult criterion_identities(const SuiteOptions& opt) {
    CriterionResult res;
    res.title = "Deterministic identities";
    std::mt19937_64 rng(derive_seed(opt.seed, 6));
    std::uniform_real_distribution<double> ut(-5.0, 5.0);
    std::uniform_real_distribution<double> ue(0.2, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double t = ut(rng);
        const double eps = ue(rng);
        worst = std::max(worst, std::abs(verify_log_integral_identity(t, eps)));
    }
    res.checks.push_back(less_than("log-integral identity, max error over 10 (t, eps)", worst, 1e-8));

    std::vector<std::pair<double, double>> pairs{{0.5, 0.0}, {0.9, -0.3}};
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    while (pairs.size() < 5) {
        const double x = ux(rng);
        const double y = ux(rng);
        if (std::abs(x - y) >= 0.1) pairs.emplace_back(x, y);
    }
    double cheb_worst = 0.0;
    for (auto [x, y] : pairs) cheb_worst = std::max(cheb_worst, verify_log_chebyshev_identity(x, y, 100000));
    res.checks.push_back(less_than("log-Chebyshev identity, Cesaro error at n_max=1e5", cheb_worst, 1e-3));

    const double ds[] = {1e2, 1e3, 1e4};
    const auto sz = verify_szego_asymptotic(0.5, -1.0, 1.0, ds);
    res.checks.push_back(less_than("Re C(z_j, z_k) decay slope >= -1.2", -sz.slope, 1.2));
    res.checks.push_back(less_than("Re C(z_j, z_k) decay slope <= -0.8", sz.slope, -0.8));
    res.notes.push_back("fitted slope " + fmt(sz.slope));

    const double taus[] = {0.5, 1.0};
    const double alphas[] = {0.7, -0.4};
    const auto set = SingularitySet::mesoscopic(MesoscopicConfig::make(0.0, 1.0, 0.5), 10.0, taus, alphas);
    const double x = 0.2;
    const double sq = std::sqrt(1.0 - x * x);
    const double omega = szego_weight(x, set);
    const auto exact_bdry = szego_D_of_c({x, sq}, set) * szego_D_of_c({x, -sq}, set);
    res.checks.push_back(less_than("Szego boundary product |D+ D- - omega| (boundary values)",
                                   std::abs(exact_bdry - omega), 1e-8));
    auto offset_product = [&](double e) { return szego_D({x, e}, set) * szego_D({x, -e}, set); };
    const auto extrap = 2.0 * offset_product(1e-6) - offset_product(2e-6);
    res.checks.push_back(less_than("Szego boundary product |D+ D- - omega| (+-1e-6 offsets, extrapolated)",
                                   std::abs(extrap - omega), 1e-8));

    std::uniform_real_distribution<double> uz(-3.0, 3.0);
    double conf_worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const std::complex<double> z(uz(rng), uz(rng));
        const auto c = conformal_c(z);
        conf_worst = std::max(conf_worst, std::abs(c + 1.0 / c - 2.0 * z) / std::max(1.0, std::abs(z)));
    }
    res.checks.push_back(less_than("c + 1/c = 2z at 20 random points", conf_worst, 1e-12));
    return res;
}

CriterionResult criterion_limit_samplers(const SuiteOptions& opt) {
    CriterionResult res;
    res.title = "Cholesky vs harmonizable samplers for B_0";
    const std::size_t reps = reps_or(opt, 100000);
    constexpr double kEta = 1.0;
    std::vector<double> times;
    for (int i = 0; i < 9; ++i) times.push_back(-2.0 + 0.5 * i);

    const CholeskyB0Sampler chol(times, kEta);
    const HarmonizableB0Sampler harm(times, kEta, HarmonizableGrid::defaults(times, kEta));
    std::vector<std::string> cols;
    for (double t : times) cols.push_back("B(" + fmt(t) + ")");
    const auto sc = run_replicated({"cholesky", cols, [&](StreamTag tag) { return chol.sample(tag); }}, reps,
                                   derive_seed(opt.seed, 7, 0), run_options(opt));
    const auto sh = run_replicated({"harmonizable", cols, [&](StreamTag tag) { return harm.sample(tag); }}, reps,
                                   derive_seed(opt.seed, 7, 1), run_options(opt));

    double worst_excess = -1e300;
    std::string worst_name;
    bool all_ok = true;
    for (std::size_t i = 0; i < times.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double diff = std::abs(sc.covariance(i, j) - sh.covariance(i, j));
            const double se = std::hypot(sc.se_covariance(i, j), sh.se_covariance(i, j));
            const double tol = std::max(0.02, 4.0 * se);
            all_ok = all_ok && diff < tol;
            if (diff - tol > worst_excess) {
                worst_excess = diff - tol;
                worst_name = "(" + fmt(times[j]) + ", " + fmt(times[i]) + ")";
            }
        }
    }
    Check sup{"sup |Cov_cholesky - Cov_harmonizable| - max(0.02, 4 SE), worst at " + worst_name, "less", 0.0,
              worst_excess, 0.0, 0.0, all_ok};
    res.checks.push_back(sup);
    const std::size_t at_two = 8;  // t = 2 eta
    res.checks.push_back(from_report(compare("Var B(2 eta), Cholesky", 0.5 * std::numbers::ln2, sc.variance(at_two),
                                             sc.se_covariance(at_two, at_two), {3.0, 0.0})));
    res.notes.push_back("harmonizable grid: s_max " + fmt(harm.grid().s_max) + ", ds " + fmt(harm.grid().ds) +
                        ", nodes " + std::to_string(harm.grid().count) + ", predicted covariance bias " +
                        fmt(harm.predicted_bias()));
    res.notes.push_back("Cholesky jitter " + fmt(chol.jitter()));
    for (const auto& w : harm.warnings()) res.notes.push_back(w);
    res.replicates = reps;
    return res;
}

CriterionResult criterion_barnes(const SuiteOptions&) {
    CriterionResult res;
    res.title = "Barnes G-function values";
    const double expected[] = {0.0, 0.0, 0.0, std::numbers::ln2};
    for (int z = 1; z <= 4; ++z) {
        res.checks.push_back(less_than("|log G(" + std::to_string(z) + ") - expected|",
                                       std::abs(barnes_g_log(z) - expected[z - 1]), 1e-10));
    }
    const double log_half = std::numbers::ln2 / 24.0 + 0.125 - 0.25 * std::log(std::numbers::pi) -
                            1.5 * std::log(kGlaisher);
    res.checks.push_back(
        less_than("|G(1/2) - Glaisher closed form|", std::abs(std::exp(barnes_g_log(0.5)) - std::exp(log_half)), 1e-8));
    const double c0 = std::exp(log_krasovsky_constant(0.0));
    res.checks.push_back(Check{"C(0) == 1 exactly", "abs_diff", 1.0, c0, 0.0, 0.0, c0 == 1.0});
    return res;
}

CriterionResult criterion_sampler_equivalence(const SuiteOptions& opt) {
    CriterionResult res;
    res.title = "Dense vs fast sampler at N=8";
    const std::size_t reps = reps_or(opt, 5000);
    auto stat = [](const EigenvalueSample& s) {
        return std::vector<double>{s.values.back(), chebyshev_trace(s, 2)};
    };
    const auto dense = run_replicated(
        {"dense", {"lambda_max", "Tr T_2"}, [&](StreamTag tag) { return stat(eigenvalues(sample_gue_dense(8, tag))); }},
        reps, derive_seed(opt.seed, 9, 0), run_options(opt));
    const auto fast = run_replicated(
        {"fast", {"lambda_max", "Tr T_2"}, [&](StreamTag tag) { return stat(sample_spectrum_fast(8, tag)); }}, reps,
        derive_seed(opt.seed, 9, 1), run_options(opt));
    for (std::size_t i = 0; i < 2; ++i) {
        const auto ks = ks_two_sample(dense.column(i), fast.column(i));
        res.checks.push_back(greater_than("two-sample KS p-value " + dense.columns()[i], ks.p_value, 0.01));
    }
    res.replicates = reps;
    return res;
}

// Five evaluation points for the reconstruction check, or fewer when the
// sample leaves too little room.
std::vector<double> reconstruction_points(const EigenvalueSample& s) {
    std::vector<double> theta_j;
    for (double x : s.values) {
        if (std::abs(x) < 1.0) theta_j.push_back(std::acos(x));
    }
    struct Cand {
        double x;
        double score;
    };
    std::vector<Cand> cands;
    for (int i = 0; i <= 3960; ++i) {
        const double x = -0.99 + 0.0005 * i;
        bool ok = true;
        for (double e : s.values) {
            if (std::abs(e - x) < 0.05) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        const double th = std::acos(x);
        double score = 0.0;
        for (double tj : theta_j) {
            score += 1.0 / std::abs(std::sin(0.5 * (th - tj))) + 1.0 / std::abs(std::sin(0.5 * (th + tj)));
        }
        cands.push_back({x, score});
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.score < b.score; });
    std::vector<double> chosen;
    for (const auto& c : cands) {
        bool far = true;
        for (double p : chosen) far = far && std::abs(p - c.x) >= 0.02;
        if (far) chosen.push_back(c.x);
        if (chosen.size() == 5) break;
    }
    return chosen;
}

CriterionResult criterion_reconstruction(const SuiteOptions& opt) {
    CriterionResult res;
    res.title = "Chebyshev-Fourier reconstruction of D_N at N=32";
    constexpr int kSamples = 20;
    constexpr int kMax = 4096;
    const std::uint64_t seed = derive_seed(opt.seed, 10);
    int accepted = 0;
    std::uint64_t draw = 0;
    int redrawn = 0;
    while (accepted < kSamples) {
        const auto s = sample_spectrum_fast(32, StreamTag{seed, draw++});
        const auto pts = reconstruction_points(s);
        if (pts.size() < 5) {
            ++redrawn;
            continue;
        }
        const auto series = cheb_fourier_coeffs(s, kMax);
        double worst = 0.0;
        for (double x : pts) worst = std::max(worst, std::abs(series.evaluate(x) - log_abs_charpoly(s, x)));
        res.checks.push_back(less_than("sample " + std::to_string(accepted) + " max reconstruction error", worst, 1e-2));
        ++accepted;
    }
    res.notes.push_back("samples redrawn for lack of admissible points: " + std::to_string(redrawn));
    res.replicates = kSamples;
    return res;
}

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& opt) {
    const auto start = Clock::now();
    CriterionResult res;
    switch (id) {
        case 1: res = criterion_variance_growth(opt); break;
        case 2: res = criterion_chebyshev_clt(opt); break;
        case 3: res = criterion_meso_covariance(opt); break;
        case 4: res = criterion_white_noise(opt); break;
        case 5: res = criterion_oracle(opt); break;
        case 6: res = criterion_identities(opt); break;
        case 7: res = criterion_limit_samplers(opt); break;
        case 8: res = criterion_barnes(opt); break;
        case 9: res = criterion_sampler_equivalence(opt); break;
        case 10: res = criterion_reconstruction(opt); break;
        default: throw std::invalid_argument("run_criterion: unknown criterion " + std::to_string(id));
    }
    res.id = id;
    res.seed = opt.seed;
    res.pass = !res.checks.empty() &&
               std::all_of(res.checks.begin(), res.checks.end(), [](const Check& c) { return c.pass; });
    res.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return res;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& opt) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, opt));
    return out;
}

}  // namespace gue_lab
