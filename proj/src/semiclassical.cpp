#include "vibmirror/semiclassical.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "vibmirror/born.hpp"

namespace vibmirror {

namespace {
constexpr double pi = std::numbers::pi;
}

double beta(double x) {
    const double a = pi * std::fabs(x) / 2.0;
    if (a < 1e-4) return 1.0 - a * a / 6.0;            // analytic limit at x = 0
    if (a > 700.0) return 2.0 * a * std::exp(-a);      // sinh would overflow
    return a / std::sinh(a);
}

namespace {

double bessel_series(int n, double x) {
    // J_n(x) = sum_k (-1)^k (x/2)^{n+2k} / (k! (n+k)!)
    double term = 1.0;
    for (int k = 1; k <= n; ++k) term *= (x / 2.0) / k;
    double sum = term;
    const double q = x * x / 4.0;
    for (int k = 1; k <= 40; ++k) {
        term *= -q / (k * (n + k));
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum) + 1e-300) break;
    }
    return sum;
}

double bessel_miller(int n, double x) {
    // Downward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}, normalized with
    // J_0 + 2 (J_2 + J_4 + ...) = 1.
    const int start = std::max(n, static_cast<int>(std::ceil(x))) + 60;
    const int m = start + (start % 2);  // even start
    double jp = 0.0;    // J_{k+1}
    double jc = 1e-30;  // J_k, arbitrary seed
    double norm = 0.0, jn = 0.0;
    for (int k = m; k >= 0; --k) {
        if (k == n) jn = jc;
        if (k % 2 == 0) norm += (k == 0) ? jc : 2.0 * jc;
        if (k > 0) {
            const double jm = (2.0 * k / x) * jc - jp;
            jp = jc;
            jc = jm;
            if (std::fabs(jc) > 1e250) {
                jc *= 1e-250;
                jp *= 1e-250;
                jn *= 1e-250;
                norm *= 1e-250;
            }
        }
    }
    return jn / norm;
}

}  // namespace

double bessel_j(int n, double u) {
    if (std::abs(n) > 200 || std::fabs(u) > 50.0)
        throw std::domain_error("bessel_j: outside operating range |n|<=200, |u|<=50");
    // J_n(-u) = (-1)^n J_n(u),  J_{-n}(u) = (-1)^n J_n(u)
    double sign = 1.0;
    if (u < 0.0 && (n & 1)) sign = -sign;
    if (n < 0 && (n & 1)) sign = -sign;
    const int m = std::abs(n);
    const double x = std::fabs(u);
    if (x == 0.0) return m == 0 ? 1.0 : 0.0;
    if (x < 2.0) return sign * bessel_series(m, x);
    return sign * bessel_miller(m, x);
}

double modulation_index(double P_i, double Q, double epsilon) {
    if (!(P_i > 0.0)) throw std::domain_error("modulation_index: P_i must be positive");
    if (Q < 0.0) throw std::domain_error("modulation_index: Q must be non-negative");
    if (epsilon < 0.0 || epsilon > 1.0)
        throw std::domain_error("modulation_index: epsilon must lie in [0, 1]");
    return epsilon * P_i * beta(Q);
}

double hard_mirror_index(double P_i, double z0) {
    if (z0 < 0.0) throw std::domain_error("hard_mirror_index: z0 must be non-negative");
    return 2.0 * P_i * z0;
}

std::complex<double> SidebandSpectrum::a(int n) const {
    if (std::abs(n) > n_max) return {0.0, 0.0};
    return amplitudes[static_cast<size_t>(n + n_max)];
}

double SidebandSpectrum::weight(int n) const { return std::norm(a(n)); }

bool SidebandSpectrum::open(int n) const { return sideband_open(carrier_P, spacing_q, n); }

double SidebandSpectrum::momentum(int n, MomentumRule rule) const {
    if (rule == MomentumRule::linearized) return carrier_P + n * spacing_q;
    return sideband_momentum_exact(carrier_P, spacing_q, n);
}

double SidebandSpectrum::unitarity_sum() const {
    double s = 0.0;
    for (const auto& an : amplitudes) s += std::norm(an);
    return s;
}

SidebandSpectrum sideband_amplitudes(const ScaledState& state, const MirrorConfig& cfg,
                                     int n_max) {
    cfg.validate();
    SidebandSpectrum sp;
    sp.carrier_P = state.P_i;
    sp.spacing_q = state.q;
    sp.u = modulation_index(state.P_i, state.Q, cfg.epsilon);
    sp.phi = cfg.phi;
    const double E_i = 0.5 * state.P_i * state.P_i;
    sp.xi_eff = state.xi_eff ? *state.xi_eff : 0.5 * std::log(cfg.V0 / (4.0 * E_i));
    sp.n_max = n_max >= 0 ? n_max : static_cast<int>(std::ceil(sp.u)) + 15;
    sp.amplitudes.resize(2 * sp.n_max + 1);
    for (int n = -sp.n_max; n <= sp.n_max; ++n) {
        const double jn = bessel_j(n, sp.u);
        const double ph = n * (sp.phi - sp.spacing_q * sp.xi_eff);
        sp.amplitudes[static_cast<size_t>(n + sp.n_max)] =
            jn * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return sp;
}

MaxVelocityChange max_velocity_change(const ScaledState& state, const MirrorConfig& cfg) {
    cfg.validate();
    MaxVelocityChange r;
    const double u = modulation_index(state.P_i, state.Q, cfg.epsilon);
    r.dv_over_vi = cfg.epsilon * state.Q * beta(state.Q);
    r.dv = r.dv_over_vi * state.P_i;  // v_i = P_i in scaled units
    r.dominant_order = static_cast<int>(std::lround(u));
    return r;
}

bool ValidityReport::all_ok() const {
    return semiclassical.ok && micromotion.ok && low_index.ok && high_index.ok;
}

ValidityReport validity_report(const ScaledState& state, const MirrorConfig& cfg) {
    cfg.validate();
    ValidityReport r;
    r.u = modulation_index(state.P_i, state.Q, cfg.epsilon);
    r.dP_max = r.u * state.Q;
    auto margin = [](double value) { return ValidityReport::Margin{value, value > 1.0}; };
    r.semiclassical = margin(state.P_i);
    r.micromotion = margin(state.Q / 3.0);
    r.low_index = margin(state.Q > 0.0 ? state.P_i / (2.0 * state.Q * state.Q)
                                       : std::numeric_limits<double>::infinity());
    r.high_index = margin(r.dP_max > 0.0 ? state.P_i / (2.0 * r.dP_max * r.dP_max)
                                         : std::numeric_limits<double>::infinity());
    r.regime = r.u < 1.0 ? ValidityReport::Regime::low_index : ValidityReport::Regime::high_index;
    return r;
}

}  // namespace vibmirror
