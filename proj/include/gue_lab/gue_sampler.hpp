#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gue_lab/rng.hpp"

namespace gue_lab {

/// Dense Hermitian matrix drawn from the GUE with density
/// proportional to exp(-2n Tr H^2), so the spectrum fills [-1, 1].
class HermitianMatrix {
public:
    explicit HermitianMatrix(Eigen::MatrixXcd entries, StreamTag tag = {});

    [[nodiscard]] std::size_t n() const { return static_cast<std::size_t>(entries_.rows()); }
    [[nodiscard]] const Eigen::MatrixXcd& entries() const { return entries_; }
    [[nodiscard]] std::complex<double> operator()(std::size_t j, std::size_t k) const {
        return entries_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
    }
    [[nodiscard]] StreamTag tag() const { return tag_; }

    [[nodiscard]] double trace() const;
    [[nodiscard]] double trace_of_square() const;

private:
    Eigen::MatrixXcd entries_;
    StreamTag tag_;
};

/// One draw of the spectrum, sorted ascending.
struct EigenvalueSample {
    std::vector<double> values;
    StreamTag tag;

    [[nodiscard]] std::size_t n() const { return values.size(); }
};

class EigensolverError : public std::runtime_error {
public:
    EigensolverError(const std::string& what, StreamTag tag)
        : std::runtime_error(what + " (seed " + std::to_string(tag.seed) + ", replicate " +
                             std::to_string(tag.replicate) + ")"),
          tag_(tag) {}
    [[nodiscard]] StreamTag tag() const { return tag_; }

private:
    StreamTag tag_;
};

/// Diagonal entries N(0, 1/(4n)); off-diagonal real and imaginary parts
/// N(0, 1/(8n)) each.
HermitianMatrix sample_gue_dense(std::size_t n, StreamTag tag);

/// Sorted real spectrum of a Hermitian matrix.
EigenvalueSample eigenvalues(const HermitianMatrix& h);

/// Eigenvalues of the symmetric tridiagonal model with diagonal N(0, 1) and
/// off-diagonals chi_{2k}/sqrt(2), k = n-1..1, scaled by 1/(2 sqrt n). The
/// joint law of the result is that of eigenvalues(sample_gue_dense(n)).
EigenvalueSample sample_spectrum_fast(std::size_t n, StreamTag tag);

/// Sorted eigenvalues of a real symmetric tridiagonal matrix.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> offdiag,
                                            StreamTag tag = {});

}  // namespace gue_lab
