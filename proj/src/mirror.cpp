#include "vibmirror/mirror.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "vibmirror/tdse.hpp"  // NumericError

namespace vibmirror {

void MirrorConfig::validate() const {
    if (!(V0 > 0.0)) throw std::domain_error("MirrorConfig: V0 must be positive");
    if (epsilon < 0.0 || epsilon > 1.0)
        throw std::domain_error("MirrorConfig: epsilon must lie in [0, 1]");
    if (omega < 0.0) throw std::domain_error("MirrorConfig: omega must be non-negative");
}

double default_V0(double E_i) { return std::exp(10.0) * E_i; }

double potential(double z, double t, const MirrorConfig& cfg) {
    if (z < 0.0) return 0.0;
    return cfg.V0 * std::exp(-2.0 * z) * cfg.modulation(t);
}

double equivalent_displacement(const MirrorConfig& cfg, double t) {
    const double m = cfg.modulation(t);
    if (!(m > 0.0))
        throw std::domain_error("equivalent_displacement: modulation factor reaches zero");
    return 0.5 * std::log(m);
}

double ClassicalTrajectory::position(double t) const {
    const double c = std::cosh((t - t0) / tau);
    return 0.5 * std::log(V0 / E_i * c * c);
}

double ClassicalTrajectory::velocity(double t) const {
    return std::tanh((t - t0) / tau) / tau;
}

double ClassicalTrajectory::turning_point() const { return 0.5 * std::log(V0 / E_i); }

double ClassicalTrajectory::xi_eff() const { return 0.5 * std::log(V0 / (4.0 * E_i)); }

double ClassicalTrajectory::potential_seen(double t) const {
    const double c = std::cosh((t - t0) / tau);
    return E_i / (c * c);
}

ClassicalTrajectory classical_trajectory(double E_i, double t0, const MirrorConfig& cfg) {
    cfg.validate();
    if (!(E_i > 0.0)) throw std::domain_error("classical_trajectory: E_i must be positive");
    return ClassicalTrajectory{E_i, t0, 1.0 / std::sqrt(2.0 * E_i), cfg.V0};
}

namespace {

struct PhaseState {
    double z, v;
};

// z" = 2 V0 e^{-2z} (1 + eps sin(omega t + phase0))
inline double accel(double z, double t, const MirrorConfig& cfg, double phase0) {
    return 2.0 * cfg.V0 * std::exp(-2.0 * z) *
           (1.0 + cfg.epsilon * std::sin(cfg.omega * t + phase0));
}

inline PhaseState rk4_step(const PhaseState& s, double t, double dt, const MirrorConfig& cfg,
                           double phase0) {
    const double k1z = s.v;
    const double k1v = accel(s.z, t, cfg, phase0);
    const double k2z = s.v + 0.5 * dt * k1v;
    const double k2v = accel(s.z + 0.5 * dt * k1z, t + 0.5 * dt, cfg, phase0);
    const double k3z = s.v + 0.5 * dt * k2v;
    const double k3v = accel(s.z + 0.5 * dt * k2z, t + 0.5 * dt, cfg, phase0);
    const double k4z = s.v + dt * k3v;
    const double k4v = accel(s.z + dt * k3z, t + dt, cfg, phase0);
    return {s.z + dt / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z),
            s.v + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)};
}

}  // namespace

BounceResult classical_bounce_ode(double p_i, const MirrorConfig& cfg, double t0_phase,
                                  const BounceParams& params) {
    cfg.validate();
    if (!(p_i > 0.0)) throw std::domain_error("classical_bounce_ode: p_i must be positive");
    if (params.z_start_offset < 8.0)
        throw std::domain_error("classical_bounce_ode: start must be at least xi_eff + 8");

    const double E_i = 0.5 * p_i * p_i;
    const double tau = 1.0 / p_i;
    const double xi = 0.5 * std::log(cfg.V0 / (4.0 * E_i));
    const double z_start = xi + params.z_start_offset;
    const double Q = cfg.omega * tau;
    const double dt = tau / (params.steps_per_tau * std::max(1.0, Q));

    // Phase origin chosen so the modulation phase at the predicted
    // turning time equals t0_phase.
    const double t0_pred = (z_start - xi) / p_i;
    const double phase0 = t0_phase - cfg.omega * t0_pred;

    PhaseState s{z_start, -p_i};
    const double E0 = 0.5 * s.v * s.v + cfg.V0 * std::exp(-2.0 * s.z);
    const double t_budget = params.max_time_factor * (2.0 * t0_pred + 20.0 * tau);

    double t = 0.0;
    double t_turn = 0.0;
    bool turned = false;
    while (true) {
        const PhaseState next = rk4_step(s, t, dt, cfg, phase0);
        // velocity zero crossing marks the turning time
        if (!turned && s.v < 0.0 && next.v >= 0.0) {
            const double a = accel(s.z, t, cfg, phase0);
            t_turn = t - s.v / a;  // Newton step on v(t)
            turned = true;
        }
        if (turned && next.z >= z_start) {
            // Hermite interpolation of v at the z_start crossing
            const double f = (z_start - s.z) / (next.z - s.z);
            const double a0 = accel(s.z, t, cfg, phase0);
            const double a1 = accel(next.z, t + dt, cfg, phase0);
            const double v_cross = s.v + f * dt * (a0 + 0.5 * f * (a1 - a0));
            const double E1 = 0.5 * v_cross * v_cross + cfg.V0 * std::exp(-2.0 * z_start);
            double wt0 = std::fmod(cfg.omega * t_turn + phase0, 2.0 * std::acos(-1.0));
            if (wt0 < 0.0) wt0 += 2.0 * std::acos(-1.0);
            return BounceResult{E1 - E0, E_i, wt0, t + f * dt};
        }
        s = next;
        t += dt;
        if (t > t_budget)
            throw NumericError("classical_bounce_ode: atom failed to return within time budget");
    }
}

}  // namespace vibmirror
