#ifndef VIBMIRROR_INTERFEROMETER_HPP
#define VIBMIRROR_INTERFEROMETER_HPP

#include <array>
#include <complex>
#include <string>

namespace vibmirror {

// Three-bounce interferometer: two paths reach each of the output
// channels E_i and E_i + hbar*omega.  The free-flight action phases
// alpha_AB.. are opaque inputs; for the symmetric geometry
// (alpha_AB = alpha_DC, alpha_AD = alpha_BC) every momentum-dependent
// phase cancels and the channel probabilities depend on the mirror phases
// only through theta = phi_1 - 2 phi_2 + phi_3.
struct InterferometerPlan {
    std::array<double, 3> u{};        // modulation index per bounce
    std::array<double, 3> phi{};      // mirror phase per bounce
    std::array<double, 3> epsilon{};  // modulation depth per bounce
    double alpha_AB = 0.0, alpha_BC = 0.0, alpha_AD = 0.0, alpha_DC = 0.0;
    bool symmetric = true;
    std::array<bool, 3> off_target{};  // u deviates >10% from optimizer target

    double theta() const { return phi[0] - 2.0 * phi[1] + phi[2]; }
    std::string to_json() const;
};

// Complex a_{-1}, a_0, a_{+1} of one bounce (semiclassical or measured).
struct SidebandTriplet {
    std::complex<double> a_minus, a_zero, a_plus;
};

struct ChannelAmplitudes {
    std::complex<double> carrier;  // A(E_i)
    std::complex<double> up;       // A(E_i + hbar omega)
    double fringe;                 // theta-dependent part of |carrier|^2
    double total() const { return std::norm(carrier) + std::norm(up); }
};

// Amplitudes of the two output channels.  The plan's phi_m are applied
// here; pass triplets computed at phi = 0.
ChannelAmplitudes channel_amplitudes(const InterferometerPlan& plan,
                                     const std::array<SidebandTriplet, 3>& bounce);

// Fringe amplitude of the E_i channel,
//   F = 2 Re[(a0 a1*)^(1) (a1 a-1*)^(2) (a-1 a0*)^(3) e^{i theta}],
// evaluated from measured or semiclassical triplets.
double fringe_from_triplets(const std::array<SidebandTriplet, 3>& bounce, double theta);
double fringe_max_from_triplets(const std::array<SidebandTriplet, 3>& bounce);

// Same quantity in the pure Bessel form
//   F = 2 (J0(u1) J1(u1)) (J1(u2))^2 (J0(u3) J1(u3)) cos(theta).
double fringe_amplitude(double u1, double u2, double u3, double theta);

// Deterministic maximization of |F| over u1 = u3 and u2 in (0, 3):
// coarse grid plus golden-section refinement on the two separable
// factors J0 J1 and J1^2.
struct FringeOptimum {
    double u1, u2, u3;
    double F_max;
};
FringeOptimum optimize_fringe();

// Indices u_m = eps_m P_i beta(Q) for the three bounces; off_target is
// set where u_m misses the optimizer target by more than 10%.
InterferometerPlan plan_from_physics(double P_i, double Q, const std::array<double, 3>& eps,
                                     const std::array<double, 3>& phi = {0.0, 0.0, 0.0});

// Interferometer phase shift eps * P_i produced by a relative intensity
// fluctuation eps (the mirror surface moves by eps/2).
double intensity_phase_shift(double epsilon, double P_i);

}  // namespace vibmirror

#endif
