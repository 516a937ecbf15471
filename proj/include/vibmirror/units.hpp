#ifndef VIBMIRROR_UNITS_HPP
#define VIBMIRROR_UNITS_HPP

#include <optional>

// Internal unit convention: hbar = M = kappa = 1.
// Lengths are measured in 1/kappa, momenta in hbar*kappa, energies in
// hbar^2 kappa^2 / M, times in M/(hbar kappa^2), angular frequencies in
// hbar kappa^2 / M.  Every formula in the other modules is written in
// these units; this module is the only place physical units appear.

namespace vibmirror {

inline constexpr double hbar_si = 1.054571817e-34;  // J s

// Atom bouncing on an evanescent-wave mirror with decay parameter kappa.
struct PhysicalAtom {
    double mass;            // kg
    double kappa;           // 1/m
    double gravity = 9.81;  // m/s^2, used only for bounce-height conversion

    void validate() const;

    // Cs on the 852 nm D2 transition, kappa = 2*pi / 852 nm.
    static PhysicalAtom cesium_d2();
};

// Conversion factors between internal units and SI for a given atom.
struct UnitSystem {
    double length;     // m        (1/kappa)
    double momentum;   // kg m/s   (hbar kappa)
    double velocity;   // m/s      (hbar kappa / M)
    double energy;     // J        (hbar^2 kappa^2 / M)
    double time;       // s        (M / hbar kappa^2)
    double frequency;  // rad/s    (hbar kappa^2 / M)

    static UnitSystem for_atom(const PhysicalAtom& atom);
};

// Dimensionless kinematics of one incident atom.
//   P_i = p/(hbar kappa), tau = 1/P_i (interaction time), Q = omega*tau,
//   q = spacing of the sideband comb in units of hbar*kappa.  Q and q are
//   the same number; both are kept and their equality is asserted.
struct ScaledState {
    double P_i = 0.0;
    double Q = 0.0;
    double tau = 0.0;
    double q = 0.0;
    std::optional<double> xi_eff;  // effective mirror position, set once V0 is known
};

// Build a ScaledState directly from dimensionless parameters.
ScaledState make_scaled(double P_i, double Q);

// Convert an incident physical momentum and modulation frequency.
// Throws std::domain_error for non-positive momentum or negative omega.
ScaledState scale_incident(double p_si, const PhysicalAtom& atom, double omega_si);

// Inverse conversions, for round-trip checks and reporting.
double unscale_momentum(const ScaledState& s, const PhysicalAtom& atom);  // kg m/s
double unscale_omega(const ScaledState& s, const PhysicalAtom& atom);     // rad/s

// Modulation frequency (rad/s) that produces a sideband spacing of
// q_scaled (in hbar*kappa) at incident momentum P_i.
double omega_for_spacing(double q_scaled, double P_i, const PhysicalAtom& atom);

// Classical bounce height v^2/(2g) for momentum p (kg m/s).
double bounce_height(double p_si, const PhysicalAtom& atom);

}  // namespace vibmirror

#endif
