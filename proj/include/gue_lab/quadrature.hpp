#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace gue_lab {

/// Nodes and weights of an interpolatory rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule with `n` points (Newton iteration on P_n).
GaussRule gauss_legendre(int n);

/// Gauss-Jacobi rule for the weight sqrt(1 - x^2) (Chebyshev of the second
/// kind); closed-form nodes cos(k pi/(n+1)).
GaussRule gauss_chebyshev_second(int n);

/// Raised when an adaptive integral does not meet its tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved_error)
        : std::runtime_error(what + " (achieved error estimate " + std::to_string(achieved_error) + ")"),
          achieved_error_(achieved_error) {}
    [[nodiscard]] double achieved_error() const { return achieved_error_; }

private:
    double achieved_error_;
};

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    int panels = 0;
    bool converged = false;
};

struct PanelOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int order = 20;
    int initial_panels = 4;
    int max_panels = 1 << 16;
};

/// Composite rule: `panels` equal panels over [a, b], each mapped from `rule`.
template <class F>
auto integrate_panels(F&& f, double a, double b, int panels, const GaussRule& rule) {
    using T = std::decay_t<decltype(f(a))>;
    T total{};
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        T acc{};
        for (std::size_t i = 0; i < rule.size(); ++i) {
            acc += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
        }
        total += acc * (0.5 * h);
    }
    return total;
}

/// Doubles the panel count until two successive composite estimates agree.
/// The returned error is the last difference; `converged` is false when
/// `max_panels` was reached first.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, const PanelOptions& opt = {}) {
    using T = std::decay_t<decltype(f(a))>;
    const GaussRule rule = gauss_legendre(opt.order);
    int panels = opt.initial_panels;
    T prev = integrate_panels(f, a, b, panels, rule);
    QuadResult<T> out{prev, std::numeric_limits<double>::infinity(), panels, false};
    while (panels < opt.max_panels) {
        panels *= 2;
        const T cur = integrate_panels(f, a, b, panels, rule);
        const double diff = std::abs(cur - prev);
        out.value = cur;
        out.error = diff;
        out.panels = panels;
        if (diff <= std::max(opt.abs_tol, opt.rel_tol * std::abs(cur))) {
            out.converged = true;
            return out;
        }
        prev = cur;
    }
    return out;
}

}  // namespace gue_lab
