#include "gue_lab/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gue_lab {

namespace {

// log G(w + 1) for large w (Stirling-type series).
double barnes_g_log_shifted_asymptotic(double w) {
    constexpr double zeta_prime_m1 = 1.0 / 12.0 - 0.24875447703378426;  // 1/12 - log A
    const double lw = std::log(w);
    const double w2 = w * w;
    double series = -1.0 / (240.0 * w2);
    double p = w2 * w2;
    series += 1.0 / (1008.0 * p);
    p *= w2;
    series -= 1.0 / (1440.0 * p);
    p *= w2;
    series += 1.0 / (1056.0 * p);
    p *= w2;
    series -= 691.0 / (327600.0 * p);
    return 0.5 * w2 * (lw - 1.5) + 0.5 * w * std::log(2.0 * std::numbers::pi) - lw / 12.0 + zeta_prime_m1 +
           series;
}

}  // namespace

double barnes_g_log(double z) {
    if (!(z > 0.0) || !std::isfinite(z)) throw std::domain_error("barnes_g_log: z must be a positive finite number");
    constexpr double kShift = 20.0;
    double acc = 0.0;
    double w = z;
    // log G(w) = log G(w + 1) - lgamma(w).
    while (w < kShift) {
        acc -= std::lgamma(w);
        w += 1.0;
    }
    return acc + barnes_g_log_shifted_asymptotic(w - 1.0);
}

double log_krasovsky_constant(double a) {
    if (!(a > -0.5)) throw std::domain_error("log_krasovsky_constant: need a > -1/2");
    if (a == 0.0) return 0.0;
    return 2.0 * a * a * std::numbers::ln2 + 2.0 * barnes_g_log(a + 1.0) - barnes_g_log(2.0 * a + 1.0);
}

}  // namespace gue_lab
