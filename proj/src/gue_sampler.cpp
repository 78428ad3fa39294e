#include "gue_lab/gue_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace gue_lab {

HermitianMatrix::HermitianMatrix(Eigen::MatrixXcd entries, StreamTag tag)
    : entries_(std::move(entries)), tag_(tag) {
    if (entries_.rows() != entries_.cols()) {
        throw std::invalid_argument("HermitianMatrix: matrix must be square");
    }
}

double HermitianMatrix::trace() const { return entries_.diagonal().real().sum(); }

double HermitianMatrix::trace_of_square() const {
    // Tr H^2 = sum |h_jk|^2 for Hermitian H.
    return entries_.cwiseAbs2().sum();
}

HermitianMatrix sample_gue_dense(std::size_t n, StreamTag tag) {
    if (n == 0) throw std::invalid_argument("sample_gue_dense: n must be >= 1");
    auto engine = make_engine(tag);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double diag_sd = 1.0 / (2.0 * std::sqrt(static_cast<double>(n)));
    const double off_sd = 1.0 / std::sqrt(8.0 * static_cast<double>(n));

    const auto m = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd h(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        h(j, j) = {diag_sd * normal(engine), 0.0};
        for (Eigen::Index k = j + 1; k < m; ++k) {
            const double re = off_sd * normal(engine);
            const double im = off_sd * normal(engine);
            h(j, k) = {re, im};
            h(k, j) = {re, -im};
        }
    }
    return HermitianMatrix(std::move(h), tag);
}

EigenvalueSample eigenvalues(const HermitianMatrix& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.entries(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw EigensolverError("Hermitian eigensolver did not converge", h.tag());
    }
    EigenvalueSample out;
    out.tag = h.tag();
    out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + h.n());
    std::sort(out.values.begin(), out.values.end());
    return out;
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> offdiag,
                                            StreamTag tag) {
    const auto n = static_cast<Eigen::Index>(diag.size());
    if (n == 0) return {};
    if (static_cast<Eigen::Index>(offdiag.size()) + 1 != n) {
        throw std::invalid_argument("tridiagonal_eigenvalues: offdiag must have n-1 entries");
    }
    Eigen::Map<Eigen::VectorXd> d(diag.data(), n);
    Eigen::Map<Eigen::VectorXd> e(offdiag.data(), n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw EigensolverError("tridiagonal eigensolver did not converge", tag);
    }
    std::vector<double> values(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(values.begin(), values.end());
    return values;
}

EigenvalueSample sample_spectrum_fast(std::size_t n, StreamTag tag) {
    if (n == 0) throw std::invalid_argument("sample_spectrum_fast: n must be >= 1");
    auto engine = make_engine(tag);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double scale = 1.0 / (2.0 * std::sqrt(static_cast<double>(n)));

    std::vector<double> diag(n);
    std::vector<double> off(n - 1);
    for (auto& d : diag) d = scale * normal(engine);
    // chi_{2k}/sqrt(2) = sqrt(Gamma(k, 1)).
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::gamma_distribution<double> gamma(static_cast<double>(n - 1 - i), 1.0);
        off[i] = scale * std::sqrt(gamma(engine));
    }
    EigenvalueSample out;
    out.tag = tag;
    out.values = tridiagonal_eigenvalues(std::move(diag), std::move(off), tag);
    return out;
}

}  // namespace gue_lab
