#ifndef VIBMIRROR_MIRROR_HPP
#define VIBMIRROR_MIRROR_HPP

#include <cmath>

namespace vibmirror {

// Modulated exponential mirror potential, scaled units (hbar = M = kappa = 1):
//   V(z,t) = V0 exp(-2z) (1 + epsilon sin(omega t - phi))   for z >= 0,
//   V(z,t) = 0                                              for z < 0.
struct MirrorConfig {
    double V0;             // light-shift amplitude at z = 0, in hbar^2 kappa^2/M
    double epsilon = 0.0;  // modulation depth, 0..1
    double omega = 0.0;    // scaled modulation frequency (= Q * P_i)
    double phi = 0.0;      // modulation phase offset: omega*t -> omega*t - phi

    void validate() const;
    double modulation(double t) const { return 1.0 + epsilon * std::sin(omega * t - phi); }
};

// V0 such that the unmodulated turning point sits at z = 5 (far from both
// the surface and the wavepacket start): V0 = e^10 E_i.
double default_V0(double E_i);

double potential(double z, double t, const MirrorConfig& cfg);

// Displacement z_m(t) = (1/2) ln(1 + epsilon sin(omega t - phi)) of the
// equivalent moving mirror.  Throws std::domain_error at the singular
// point epsilon*sin = -1.
double equivalent_displacement(const MirrorConfig& cfg, double t);

// Classical trajectory of a reflection in the unmodulated potential,
//   z_c(t) = (1/2) ln[ (V0/E_i) cosh^2((t-t0)/tau) ],  tau = 1/P_i.
struct ClassicalTrajectory {
    double E_i;
    double t0;
    double tau;
    double V0;

    double position(double t) const;
    double velocity(double t) const;
    double turning_point() const;            // (1/2) ln(V0/E_i)
    double xi_eff() const;                   // (1/2) ln(V0/(4 E_i))
    double potential_seen(double t) const;   // E_i / cosh^2((t-t0)/tau)
};

ClassicalTrajectory classical_trajectory(double E_i, double t0, const MirrorConfig& cfg);

// Classical bounce off the modulated potential, integrated with RK4:
//   z" = 2 V0 exp(-2z) (1 + epsilon sin(omega t + phase0)).
// The atom starts at z_start with momentum -p_i and the run ends when it
// returns to z_start.  Used as the independent oracle for the energy-kick
// law dE/E = -2 eps Q beta(Q) cos(omega t0).
struct BounceParams {
    double z_start_offset = 9.0;   // start at xi_eff + offset (>= 8)
    double steps_per_tau = 200.0;  // dt = tau / (steps_per_tau * max(1, Q))
    double max_time_factor = 6.0;  // abort after max_time_factor * (2 t_in + 20 tau)
};

struct BounceResult {
    double energy_kick;  // E_f - E_i (mechanical energy at return to z_start)
    double E_i;
    double omega_t0;     // modulation phase omega*t + phase0 at the turning time
    double t_return;
};

// t0_phase: requested modulation phase at the (unperturbed) bounce time.
BounceResult classical_bounce_ode(double p_i, const MirrorConfig& cfg, double t0_phase,
                                  const BounceParams& params = {});

}  // namespace vibmirror

#endif
