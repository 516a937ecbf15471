#ifndef VIBMIRROR_SEMICLASSICAL_HPP
#define VIBMIRROR_SEMICLASSICAL_HPP

#include <complex>
#include <vector>

#include "vibmirror/mirror.hpp"
#include "vibmirror/units.hpp"

namespace vibmirror {

// Softness factor beta(x) = (pi x/2) / sinh(pi x/2).  Equal to 1 at x = 0,
// even, decays exponentially: the Fourier damping of momentum transfer by
// the smooth exponential potential.
double beta(double x);

// Bessel function J_n(u) by downward recurrence with the normalization
// J_0 + 2 sum_k J_2k = 1, or the power series for small |u|.
// Operating range |n| <= 200, |u| <= 50; accuracy better than 1e-10.
double bessel_j(int n, double u);

// Modulation index u = epsilon P_i beta(Q).
double modulation_index(double P_i, double Q, double epsilon);

// Hard-mirror limit u = 2 P_i z0 (mirror vibrating with amplitude z0);
// with z0 = epsilon/2 this is u = epsilon P_i.
double hard_mirror_index(double P_i, double z0);

enum class MomentumRule { linearized, exact };

// Phase-modulated reflection spectrum: complex sideband amplitudes
//   a_n = J_n(u) exp(-i n q xi_eff) exp(i n phi),   |n| <= n_max.
struct SidebandSpectrum {
    double carrier_P = 0.0;
    double spacing_q = 0.0;
    double u = 0.0;
    double xi_eff = 0.0;
    double phi = 0.0;
    int n_max = 0;
    std::vector<std::complex<double>> amplitudes;  // index n + n_max

    std::complex<double> a(int n) const;
    double weight(int n) const;
    // Momentum assigned to order n.  The exact rule p'_n = sqrt(2 E_n) is
    // the default for spectra handed to comparison code; closed channels
    // throw std::domain_error.
    double momentum(int n, MomentumRule rule = MomentumRule::exact) const;
    bool open(int n) const;
    double unitarity_sum() const;  // sum |a_n|^2, = 1 for large enough n_max
};

// n_max < 0 selects the default ceil(u) + 15.
SidebandSpectrum sideband_amplitudes(const ScaledState& state, const MirrorConfig& cfg,
                                     int n_max = -1);

// Maximal atomic velocity change dv/v_i = epsilon Q beta(Q); the dominant
// sidebands sit near n = +-u.
struct MaxVelocityChange {
    double dv_over_vi;
    double dv;  // scaled velocity units
    int dominant_order;
};
MaxVelocityChange max_velocity_change(const ScaledState& state, const MirrorConfig& cfg);

// Validity classifier for the phase-modulation treatment.  Each margin is
// the ratio of the actual quantity to its threshold; ok when > 1.
struct ValidityReport {
    struct Margin {
        double value;
        bool ok;
    };
    Margin semiclassical;  // P_i / 1
    Margin micromotion;    // Q / 3
    Margin low_index;      // P_i / (2 Q^2)
    Margin high_index;     // P_i / (2 (u Q)^2)
    enum class Regime { low_index, high_index } regime;  // split at u = 1
    double u;
    double dP_max;  // u Q, maximal appreciable momentum transfer
    bool all_ok() const;
};
ValidityReport validity_report(const ScaledState& state, const MirrorConfig& cfg);

}  // namespace vibmirror

#endif
