#include "commands.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "gue_lab/asymptotics.hpp"
#include "gue_lab/char_poly.hpp"
#include "gue_lab/experiments.hpp"
#include "gue_lab/finite_n_oracle.hpp"
#include "gue_lab/gue_sampler.hpp"
#include "gue_lab/limit_processes.hpp"
#include "gue_lab/stat_harness.hpp"
#include "output.hpp"

namespace gue_lab::cli {

namespace {

struct Defaults {
    std::size_t n;
    std::size_t reps;
    int kmax;
};

Defaults defaults_for(const std::string& cmd) {
    if (cmd == "macro") return {256, 4000, 8};
    if (cmd == "meso") return {1024, 2000, 0};
    if (cmd == "whitenoise") return {512, 2000, 0};
    if (cmd == "oracle") return {50, 4000, 3};
    return {0, 0, 0};
}

std::size_t eff_n(const RunConfig& c) { return c.n.value_or(defaults_for(c.subcommand).n); }
std::size_t eff_reps(const RunConfig& c) { return c.reps.value_or(defaults_for(c.subcommand).reps); }
int eff_kmax(const RunConfig& c) { return c.kmax.value_or(defaults_for(c.subcommand).kmax); }

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

RunMeta make_meta(const RunConfig& c) {
    RunMeta m;
    m.command = c.subcommand;
    m.seed = c.seed;
    const bool sampled = c.subcommand == "macro" || c.subcommand == "meso" || c.subcommand == "whitenoise" ||
                         c.subcommand == "oracle";
    if (sampled) m.config.emplace_back("n", std::to_string(eff_n(c)));
    if (sampled || c.subcommand == "verify-all") {
        m.config.emplace_back("reps", c.reps ? std::to_string(*c.reps) : (sampled ? std::to_string(eff_reps(c)) : "default"));
    }
    m.config.emplace_back("seed", std::to_string(c.seed));
    if (c.subcommand == "meso" || c.subcommand == "whitenoise") {
        m.config.emplace_back("alpha", num(c.alpha));
        m.config.emplace_back("eta", num(c.eta));
        m.config.emplace_back("x0", num(c.x0));
    }
    if (c.subcommand == "macro" || c.subcommand == "oracle") m.config.emplace_back("kmax", std::to_string(eff_kmax(c)));
    m.config.emplace_back("out", c.out.string());
    m.config.emplace_back("format", c.format);
    m.config.emplace_back("parallel", c.parallel ? "true" : "false");
    return m;
}

Table checks_table(const std::vector<CriterionResult>& results) {
    Table t{"report", {"criterion", "name", "relation", "predicted", "estimated", "se", "tolerance", "pass"}, {}};
    for (const auto& r : results) {
        for (const auto& c : r.checks) {
            t.rows.push_back({static_cast<long long>(r.id), c.name, c.relation, c.predicted, c.estimated, c.se,
                              c.tolerance, std::string(c.pass ? "true" : "false")});
        }
    }
    return t;
}

CriterionResult finalize(CriterionResult r) {
    r.pass = !r.checks.empty();
    for (const auto& c : r.checks) r.pass = r.pass && c.pass;
    return r;
}

void print_result(const CriterionResult& r, bool show_checks) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ");
    if (r.id > 0) std::cout << "criterion " << r.id << ": ";
    std::cout << r.title << " (" << r.checks.size() << " checks, " << r.wall_seconds << " s)\n";
    for (const auto& c : r.checks) {
        if (!show_checks && c.pass) continue;
        std::cout << "    " << (c.pass ? "ok   " : "FAIL ") << c.name << ": estimated " << c.estimated;
        if (c.relation == "abs_diff") {
            std::cout << ", predicted " << c.predicted << ", tolerance " << c.tolerance;
        } else {
            std::cout << (c.relation == "less" ? " < " : " > ") << c.tolerance;
        }
        std::cout << "\n";
    }
}

int finish(OutputSink& sink, std::vector<CriterionResult> results) {
    for (auto& r : results) {
        if (r.wall_seconds == 0.0) r.wall_seconds = sink.meta().elapsed();
        if (r.seed == 0) r.seed = sink.meta().seed;
    }
    sink.add(checks_table(results));
    sink.finish(results);
    bool pass = true;
    for (const auto& r : results) {
        print_result(r, false);
        pass = pass && r.pass;
    }
    return pass ? kExitOk : kExitVerificationFailed;
}

RunOptions run_opts(const RunConfig& c) { return RunOptions{c.parallel, 0}; }

// ---------------------------------------------------------------------------

int cmd_macro(const RunConfig& cfg) {
    const std::size_t n = eff_n(cfg);
    const std::size_t reps = eff_reps(cfg);
    const int kmax = eff_kmax(cfg);
    OutputSink sink(cfg.out, cfg.format, cfg.gnuplot, make_meta(cfg));

    std::vector<std::string> cols;
    for (int k = 1; k <= kmax; ++k) cols.push_back("a_" + std::to_string(k));
    for (int k = 0; k <= kmax; ++k) cols.push_back("c_" + std::to_string(k));
    Experiment exp{"macro", cols, [n, kmax](StreamTag tag) {
                       const auto s = sample_spectrum_fast(n, tag);
                       const auto tr = chebyshev_traces(s, kmax);
                       std::vector<double> row;
                       for (int k = 1; k <= kmax; ++k) row.push_back(2.0 / std::sqrt(double(k)) * tr[k]);
                       const auto series = cheb_fourier_coeffs(s, kmax);
                       row.insert(row.end(), series.c.begin(), series.c.end());
                       return row;
                   }};
    const auto stats = run_replicated(exp, reps, derive_seed(cfg.seed, 101), run_opts(cfg));
    const auto& data = stats.data();
    const auto ka = static_cast<Eigen::Index>(kmax);

    // a_{n,N} is centered by its exact finite-N mean, c_k by the sample mean.
    const KernelEvaluator ev(n);
    OracleQuadSpec spec;
    spec.parallel = cfg.parallel;
    std::vector<double> exact_mean_a;
    for (int k = 1; k <= kmax; ++k) {
        const auto ex = exact_linear_stat_mean(ev, [k](double x) { return chebyshev_T(k, x); }, spec);
        exact_mean_a.push_back(2.0 / std::sqrt(double(k)) * ex.value);
    }

    Table a{"a_coefficients", {"replicate"}, {}};
    Table c{"cheb_coeffs", {"replicate"}, {}};
    for (int k = 1; k <= kmax; ++k) a.header.push_back("a_" + std::to_string(k));
    for (int k = 0; k <= kmax; ++k) c.header.push_back("c_" + std::to_string(k));
    for (Eigen::Index r = 0; r < data.rows(); ++r) {
        std::vector<Cell> ra{static_cast<long long>(r)};
        std::vector<Cell> rc{static_cast<long long>(r)};
        for (Eigen::Index j = 0; j < ka; ++j) ra.emplace_back(data(r, j) - exact_mean_a[static_cast<std::size_t>(j)]);
        for (Eigen::Index j = 0; j <= ka; ++j) {
            rc.emplace_back(data(r, ka + j) - stats.mean(static_cast<std::size_t>(ka + j)));
        }
        a.rows.push_back(std::move(ra));
        c.rows.push_back(std::move(rc));
    }

    CriterionResult res;
    res.title = "macro: a_{n,N} and Chebyshev coefficients at N=" + std::to_string(n);
    res.replicates = reps;
    Table moments{"moments", {"k", "exact_mean_a", "mean_a", "se_mean_a", "var_a", "se_var_a", "ks_p_a", "var_c", "se_var_c", "predicted_var_c"}, {}};
    const double k_var = bonferroni_k(static_cast<std::size_t>(kmax));
    const double ks_alpha = 0.01 / kmax;
    for (int k = 1; k <= kmax; ++k) {
        const auto ia = static_cast<std::size_t>(k - 1);
        const auto ic = static_cast<std::size_t>(kmax + k);
        double p = -1.0;
        if (reps >= 100) {
            p = ks_normality(stats.column(ia)).p_value;
            res.checks.push_back(greater_than("KS normality p-value a_" + std::to_string(k), p, ks_alpha));
        }
        res.checks.push_back(
            from_report(compare("E a_" + std::to_string(k), exact_mean_a[ia], stats, ia, {k_var, 0.0})));
        res.checks.push_back(from_report(
            compare("Var a_" + std::to_string(k), 1.0, stats.variance(ia), stats.se_covariance(ia, ia), {k_var, 0.0})));
        res.checks.push_back(from_report(compare("Var c_" + std::to_string(k), 1.0 / k, stats.variance(ic),
                                                 stats.se_covariance(ic, ic), {k_var, 0.0})));
        moments.rows.push_back({static_cast<long long>(k), exact_mean_a[ia], stats.mean(ia), stats.se_mean(ia),
                                stats.variance(ia),
                                stats.se_covariance(ia, ia), p, stats.variance(ic), stats.se_covariance(ic, ic),
                                1.0 / k});
    }
    sink.add(std::move(a));
    sink.add(std::move(c));
    sink.add(std::move(moments));
    sink.add_script("macro", "set datafile separator ','\n"
                             "set key autotitle columnheader\n"
                             "set xlabel 'k'\n"
                             "set logscale y\n"
                             "plot 'moments.csv' using 1:8:9 with yerrorbars title 'Var c_k', \\\n"
                             "     'moments.csv' using 1:10 with lines title '1/k', \\\n"
                             "     'moments.csv' using 1:5:6 with yerrorbars title 'Var a_k'\n"
                             "pause -1\n");
    return finish(sink, {finalize(std::move(res))});
}

int cmd_meso(const RunConfig& cfg) {
    const std::size_t n = eff_n(cfg);
    const std::size_t reps = eff_reps(cfg);
    const auto mc = MesoscopicConfig::make(cfg.x0, cfg.eta, cfg.alpha);
    OutputSink sink(cfg.out, cfg.format, cfg.gnuplot, make_meta(cfg));

    std::vector<double> taus;
    for (int i = 0; i <= 8; ++i) taus.push_back(0.25 * i);
    std::vector<std::string> cols;
    for (double t : taus) cols.push_back("W(" + num(t) + ")");
    Experiment exp{"meso", cols, [&](StreamTag tag) { return meso_path(sample_spectrum_fast(n, tag), mc, taus); }};
    const auto stats = run_replicated(exp, reps, derive_seed(cfg.seed, 102), run_opts(cfg));
    const auto& data = stats.data();
    const std::size_t m = taus.size();

    std::vector<double> predicted_mean;
    for (double t : taus) predicted_mean.push_back(predicted_mean_w(mc, t, n));

    Table paths{"paths", {"replicate"}, {}};
    for (double t : taus) paths.header.push_back("tau=" + num(t));
    for (Eigen::Index r = 0; r < data.rows(); ++r) {
        std::vector<Cell> row{static_cast<long long>(r)};
        for (std::size_t j = 0; j < m; ++j) row.emplace_back(data(r, static_cast<Eigen::Index>(j)) - predicted_mean[j]);
        paths.rows.push_back(std::move(row));
    }

    Table mean{"mean", {"tau", "empirical", "predicted", "se"}, {}};
    for (std::size_t j = 0; j < m; ++j) mean.rows.push_back({taus[j], stats.mean(j), predicted_mean[j], stats.se_mean(j)});

    CriterionResult res;
    res.title = "meso: covariance of W_N against cov_B0 at N=" + std::to_string(n);
    res.replicates = reps;
    Table cov{"covariance", {"tau", "upsilon", "empirical", "predicted", "se"}, {}};
    const double k = bonferroni_k(m * (m + 1) / 2);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double pred = cov_B0(taus[i], taus[j], mc.eta);
            cov.rows.push_back({taus[i], taus[j], stats.covariance(i, j), pred, stats.se_covariance(i, j)});
            if (j <= i) {
                res.checks.push_back(from_report(compare("Cov(W(" + num(taus[j]) + "), W(" + num(taus[i]) + "))",
                                                         pred, stats.covariance(i, j), stats.se_covariance(i, j),
                                                         {k, 0.05})));
            }
        }
    }
    res.notes.push_back("d_N = " + num(mc.zoom(n)) + "; paths are centered by the predicted mean");
    sink.add(std::move(paths));
    sink.add(std::move(mean));
    sink.add(std::move(cov));
    sink.add_script("meso", "set datafile separator ','\n"
                            "set key autotitle columnheader\n"
                            "set xlabel 'tau'\n"
                            "set ylabel 'Var W(tau)'\n"
                            "plot 'covariance.csv' using ($1 == $2 ? $1 : 1/0):3:5 with yerrorbars title 'empirical', \\\n"
                            "     'covariance.csv' using ($1 == $2 ? $1 : 1/0):4 with linespoints title 'cov_B0'\n"
                            "pause -1\n");
    return finish(sink, {finalize(std::move(res))});
}

int cmd_whitenoise(const RunConfig& cfg) {
    const std::size_t n = eff_n(cfg);
    const std::size_t reps = eff_reps(cfg);
    const auto mc = MesoscopicConfig::make(cfg.x0, cfg.eta, cfg.alpha);
    const double d = mc.zoom(n);
    const double x_max = (1.6 + std::abs(cfg.x0)) * d;
    OutputSink sink(cfg.out, cfg.format, cfg.gnuplot, make_meta(cfg));

    const std::vector<TestFunction> bumps{TestFunction::make(2.0, 1.0), TestFunction::make(3.0, 1.0),
                                          TestFunction::make(5.0, 1.0)};
    std::vector<SmearedTransform> transforms;
    for (const auto& b : bumps) transforms.emplace_back(b, x_max, 1e-9);
    const std::size_t nb = bumps.size();

    std::vector<std::string> cols;
    for (std::size_t j = 1; j <= nb; ++j) {
        cols.push_back("re_c" + std::to_string(j));
        cols.push_back("im_c" + std::to_string(j));
    }
    Experiment exp{"whitenoise", cols, [&](StreamTag tag) {
                       const auto s = sample_spectrum_fast(n, tag);
                       for (double x : s.values) {
                           if (std::abs(d * (x - mc.x0)) > x_max) {
                               throw std::runtime_error("eigenvalue outside the tabulated transform range");
                           }
                       }
                       std::vector<double> row;
                       for (const auto& f : transforms) {
                           const auto c = smeared_coeff_c(s, mc, f);
                           row.push_back(c.real());
                           row.push_back(c.imag());
                       }
                       return row;
                   }};
    const auto stats = run_replicated(exp, reps, derive_seed(cfg.seed, 103), run_opts(cfg));
    const auto& data = stats.data();
    const auto rows = data.rows();

    Table coeffs{"coefficients", {"replicate"}, {}};
    coeffs.header.insert(coeffs.header.end(), cols.begin(), cols.end());
    for (Eigen::Index r = 0; r < rows; ++r) {
        std::vector<Cell> row{static_cast<long long>(r)};
        for (Eigen::Index j = 0; j < data.cols(); ++j) row.emplace_back(data(r, j));
        coeffs.rows.push_back(std::move(row));
    }

    std::vector<std::vector<std::complex<double>>> c(nb);
    for (std::size_t j = 0; j < nb; ++j) {
        const std::complex<double> mean(stats.mean(2 * j), stats.mean(2 * j + 1));
        for (Eigen::Index r = 0; r < rows; ++r) {
            c[j].push_back(std::complex<double>(data(r, 2 * j), data(r, 2 * j + 1)) - mean);
        }
    }
    // Mean and SE of the real and imaginary parts of a per-replicate product.
    auto moment = [&](auto product) {
        std::vector<double> re;
        std::vector<double> im;
        for (Eigen::Index r = 0; r < rows; ++r) {
            const auto p = product(r);
            re.push_back(p.real());
            im.push_back(p.imag());
        }
        auto stat = [](const std::vector<double>& v) {
            NeumaierSum s;
            for (double x : v) s.add(x);
            const double k = static_cast<double>(v.size());
            const double mu = s.value() / k;
            NeumaierSum q;
            for (double x : v) q.add((x - mu) * (x - mu));
            return std::pair{mu, std::sqrt(q.value() / (k - 1.0) / k)};
        };
        return std::pair{stat(re), stat(im)};
    };

    CriterionResult res;
    res.title = "whitenoise: smeared Fourier coefficients at N=" + std::to_string(n);
    res.replicates = reps;
    const std::size_t pairs = nb * (nb + 1) / 2;
    const double k_pair = bonferroni_k(2 * pairs);
    const double k_mean = bonferroni_k(2 * nb);
    Table gamma{"gamma", {"j", "k", "re_empirical", "im_empirical", "predicted", "se_re", "se_im"}, {}};
    Table relation{"relation", {"j", "k", "re_empirical", "im_empirical", "se_re", "se_im"}, {}};
    for (std::size_t j = 0; j < nb; ++j) {
        for (std::size_t k = 0; k <= j; ++k) {
            const std::string idx = std::to_string(k + 1) + std::to_string(j + 1);
            const double pred = bump_inner_product(bumps[k], bumps[j]);
            const auto [g_re, g_im] = moment([&](Eigen::Index r) { return c[k][r] * std::conj(c[j][r]); });
            const auto [r_re, r_im] = moment([&](Eigen::Index r) { return c[k][r] * c[j][r]; });
            gamma.rows.push_back({static_cast<long long>(k + 1), static_cast<long long>(j + 1), g_re.first,
                                  g_im.first, pred, g_re.second, g_im.second});
            relation.rows.push_back({static_cast<long long>(k + 1), static_cast<long long>(j + 1), r_re.first,
                                     r_im.first, r_re.second, r_im.second});
            res.checks.push_back(from_report(compare("Re Gamma_" + idx, pred, g_re.first, g_re.second, {k_pair, 0.05})));
            res.checks.push_back(from_report(compare("Im Gamma_" + idx, 0.0, g_im.first, g_im.second, {k_pair, 0.05})));
            res.checks.push_back(from_report(compare("Re relation_" + idx, 0.0, r_re.first, r_re.second, {k_pair, 0.0})));
            res.checks.push_back(from_report(compare("Im relation_" + idx, 0.0, r_im.first, r_im.second, {k_pair, 0.0})));
        }
    }
    for (std::size_t j = 0; j < 2 * nb; ++j) {
        res.checks.push_back(from_report(compare(cols[j] + " mean", 0.0, stats, j, {k_mean, 0.0})));
    }
    res.notes.push_back("bumps centered at 2, 3, 5 with half-width 1; d_N = " + num(d));
    sink.add(std::move(coeffs));
    sink.add(std::move(gamma));
    sink.add(std::move(relation));
    sink.add_script("whitenoise", "set datafile separator ','\n"
                                  "set key autotitle columnheader\n"
                                  "set size square\n"
                                  "plot 'coefficients.csv' using 2:3 with dots title 'c_N(xi_1)', \\\n"
                                  "     'coefficients.csv' using 6:7 with dots title 'c_N(xi_3)'\n"
                                  "pause -1\n");
    return finish(sink, {finalize(std::move(res))});
}

int cmd_oracle(const RunConfig& cfg) {
    const std::size_t n = eff_n(cfg);
    const std::size_t reps = eff_reps(cfg);
    const int kmax = eff_kmax(cfg);
    OutputSink sink(cfg.out, cfg.format, cfg.gnuplot, make_meta(cfg));

    std::vector<std::string> cols;
    for (int k = 1; k <= kmax; ++k) cols.push_back("Tr T_" + std::to_string(k));
    Experiment exp{"oracle", cols, [n, kmax](StreamTag tag) {
                       const auto tr = chebyshev_traces(sample_spectrum_fast(n, tag), kmax);
                       return std::vector<double>(tr.begin() + 1, tr.end());
                   }};
    const auto stats = run_replicated(exp, reps, derive_seed(cfg.seed, 104), run_opts(cfg));

    const KernelEvaluator ev(n);
    OracleQuadSpec spec;
    spec.parallel = cfg.parallel;
    auto tk = [](int k) { return RealFunction([k](double x) { return chebyshev_T(k, x); }); };

    CriterionResult res;
    res.title = "oracle: exact moments of Tr T_k vs Monte Carlo at N=" + std::to_string(n);
    res.replicates = reps;
    const auto m = static_cast<std::size_t>(kmax);
    const double k_mean = bonferroni_k(m);
    const double k_cov = bonferroni_k(m * (m + 1) / 2);
    Table means{"exact_means", {"k", "exact", "empirical", "se", "quadrature_error"}, {}};
    Table covs{"exact_covariance", {"j", "k", "exact", "empirical", "se", "quadrature_error", "tail_bound", "limit"}, {}};
    for (int k = 1; k <= kmax; ++k) {
        const auto i = static_cast<std::size_t>(k - 1);
        const auto ex = exact_linear_stat_mean(ev, tk(k), spec);
        means.rows.push_back({static_cast<long long>(k), ex.value, stats.mean(i), stats.se_mean(i), ex.error_estimate});
        res.checks.push_back(from_report(compare("E Tr T_" + std::to_string(k), ex.value, stats, i, {k_mean, 0.0})));
    }
    for (int j = 1; j <= kmax; ++j) {
        for (int k = 1; k <= j; ++k) {
            const auto a = static_cast<std::size_t>(j - 1);
            const auto b = static_cast<std::size_t>(k - 1);
            const auto ex = exact_linear_stat_cov(ev, tk(j), tk(k), spec);
            const double limit = (j == k) ? j / 4.0 : 0.0;
            covs.rows.push_back({static_cast<long long>(k), static_cast<long long>(j), ex.value, stats.covariance(a, b),
                                 stats.se_covariance(a, b), ex.error_estimate, ex.tail_bound, limit});
            res.checks.push_back(from_report(compare("Cov(Tr T_" + std::to_string(k) + ", Tr T_" + std::to_string(j) + ")",
                                                     ex.value, stats.covariance(a, b), stats.se_covariance(a, b),
                                                     {k_cov, 0.0})));
        }
    }
    sink.add(std::move(means));
    sink.add(std::move(covs));
    sink.add_script("oracle", "set datafile separator ','\n"
                              "set key autotitle columnheader\n"
                              "set xlabel 'k'\n"
                              "plot 'exact_covariance.csv' using ($1 == $2 ? $1 : 1/0):3 with points title 'exact Var Tr T_k', \\\n"
                              "     'exact_covariance.csv' using ($1 == $2 ? $1 : 1/0):4:5 with yerrorbars title 'Monte Carlo', \\\n"
                              "     'exact_covariance.csv' using ($1 == $2 ? $1 : 1/0):8 with lines title 'k/4'\n"
                              "pause -1\n");
    return finish(sink, {finalize(std::move(res))});
}

int cmd_suite(const RunConfig& cfg, const std::vector<int>& ids) {
    OutputSink sink(cfg.out, cfg.format, false, make_meta(cfg));
    SuiteOptions opt;
    opt.seed = cfg.seed;
    opt.reps = cfg.reps;
    opt.parallel = cfg.parallel;
    std::vector<CriterionResult> results;
    for (int id : ids) {
        results.push_back(run_criterion(id, opt));
        std::cerr << "criterion " << id << " done (" << results.back().wall_seconds << " s)\n";
    }
    return finish(sink, std::move(results));
}

}  // namespace

void RunConfig::validate() const {
    static const std::vector<std::string> known{"macro", "meso", "whitenoise", "oracle", "identities", "verify-all"};
    if (std::find(known.begin(), known.end(), subcommand) == known.end()) {
        throw ConfigError("unknown subcommand '" + subcommand + "'");
    }
    if (format != "csv" && format != "json") throw ConfigError("--format must be csv or json");
    if (out.empty()) throw ConfigError("--out must not be empty");
    if (n && *n < 2) throw ConfigError("--n must be at least 2");
    if (n && *n > 100000) throw ConfigError("--n must be at most 100000");
    if (reps && *reps < 2) throw ConfigError("--reps must be at least 2");
    if (kmax && (*kmax < 1 || *kmax > 4096)) throw ConfigError("--kmax must be in [1, 4096]");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("--alpha must lie in (0, 1)");
    if (!(eta > 0.0) || !std::isfinite(eta)) throw ConfigError("--eta must be positive and finite");
    if (!(std::abs(x0) < 1.0)) throw ConfigError("--x0 must lie in (-1, 1)");
    if (subcommand == "oracle" && eff_n(*this) > 2000) throw ConfigError("oracle: --n above 2000 is not supported");
}

int run_command(const RunConfig& cfg) {
    cfg.validate();
    std::error_code ec;
    std::filesystem::create_directories(cfg.out, ec);
    if (ec || !std::filesystem::is_directory(cfg.out)) {
        throw ConfigError("cannot create output directory " + cfg.out.string());
    }
    if (cfg.subcommand == "macro") return cmd_macro(cfg);
    if (cfg.subcommand == "meso") return cmd_meso(cfg);
    if (cfg.subcommand == "whitenoise") return cmd_whitenoise(cfg);
    if (cfg.subcommand == "oracle") return cmd_oracle(cfg);
    if (cfg.subcommand == "identities") return cmd_suite(cfg, {6, 8});
    std::vector<int> all;
    for (int id = 1; id <= kCriterionCount; ++id) all.push_back(id);
    return cmd_suite(cfg, all);
}

}  // namespace gue_lab::cli
