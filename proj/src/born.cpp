#include "vibmirror/born.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vibmirror {

namespace {
constexpr double pi = std::numbers::pi;
}

double log_sinh(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_sinh: x must be positive");
    if (x < 1e-3) {
        // log(x) + x^2/6 - x^4/180 + ...
        const double x2 = x * x;
        return std::log(x) + x2 / 6.0 - x2 * x2 / 180.0;
    }
    return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0);
}

namespace {

// log of [ |D| / sinh(pi |D| / 2) ], analytic at D = 0 where it equals
// log(2/pi).
double log_d_over_sinh(double D) {
    const double x = pi * std::fabs(D) / 2.0;
    if (x < 1e-6) return std::log(2.0 / pi) - x * x / 6.0;
    return std::log(std::fabs(D)) - log_sinh(x);
}

}  // namespace

double born_probability(double P_i, double P_f, double epsilon) {
    if (!(P_i > 0.0) || !(P_f > 0.0))
        throw std::domain_error("born_probability: momenta must be positive");
    if (epsilon < 0.0 || epsilon > 1.0)
        throw std::domain_error("born_probability: epsilon must lie in [0, 1]");
    if (epsilon == 0.0) return 0.0;
    const double S = P_i + P_f;
    const double D = P_i - P_f;
    const double ln_w = 2.0 * std::log(epsilon) + std::log(pi * pi / 64.0) +
                        log_sinh(pi * P_i) + log_sinh(pi * P_f) + 2.0 * std::log(S) +
                        2.0 * log_d_over_sinh(D) - 2.0 * log_sinh(pi * S / 2.0);
    return std::exp(ln_w);
}

bool sideband_open(double P_i, double Q, int n) {
    return P_i * P_i + 2.0 * n * P_i * Q >= 0.0;
}

double sideband_momentum_exact(double P_i, double Q, int n) {
    if (!(P_i > 0.0)) throw std::domain_error("sideband_momentum_exact: P_i must be positive");
    if (Q < 0.0) throw std::domain_error("sideband_momentum_exact: Q must be non-negative");
    const double disc = P_i * P_i + 2.0 * n * P_i * Q;
    if (disc < 0.0)
        throw std::domain_error("sideband_momentum_exact: channel energetically closed");
    return std::sqrt(disc);
}

BornResult born_first_sidebands(double P_i, double Q, double epsilon) {
    BornResult r;
    r.P_f_plus = sideband_momentum_exact(P_i, Q, +1);
    r.P_f_minus = sideband_momentum_exact(P_i, Q, -1);
    r.W_plus = born_probability(P_i, r.P_f_plus, epsilon);
    r.W_minus = born_probability(P_i, r.P_f_minus, epsilon);
    r.W_plus_flux = r.W_plus * P_i / r.P_f_plus;
    r.W_minus_flux = r.W_minus * P_i / r.P_f_minus;
    r.perturbative_ok = std::max(r.W_plus, r.W_minus) <= 0.1;
    return r;
}

AsymmetryRatio asymmetry_ratio(double P_i, double Q) {
    if (!(P_i > 0.0)) throw std::domain_error("asymmetry_ratio: P_i must be positive");
    if (Q < 0.0) throw std::domain_error("asymmetry_ratio: Q must be non-negative");
    if (!(2.0 * Q < P_i))
        throw std::domain_error("asymmetry_ratio: lower sideband closed (needs 2Q < P_i)");
    AsymmetryRatio r;
    r.approx = std::exp(pi * Q * Q / P_i);
    if (Q == 0.0) {
        r.exact = 1.0;
        return r;
    }
    const double Pp = sideband_momentum_exact(P_i, Q, +1);
    const double Pm = sideband_momentum_exact(P_i, Q, -1);
    r.exact = born_probability(P_i, Pp, 1.0) / born_probability(P_i, Pm, 1.0);
    return r;
}

}  // namespace vibmirror
