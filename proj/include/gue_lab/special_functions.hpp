#pragma once

namespace gue_lab {

/// Glaisher-Kinkelin constant A.
inline constexpr double kGlaisher = 1.2824271291006226368753425688697917;

/// log G(z) for the Barnes G-function, z > 0. Throws std::domain_error
/// otherwise.
double barnes_g_log(double z);

/// log C(a) with C(a) = 2^{2a^2} G(a+1)^2 / G(2a+1), a > -1/2.
double log_krasovsky_constant(double a);

}  // namespace gue_lab
