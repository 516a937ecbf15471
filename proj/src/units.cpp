#include "vibmirror/units.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vibmirror {

void PhysicalAtom::validate() const {
    if (!(mass > 0.0)) throw std::domain_error("PhysicalAtom: mass must be positive");
    if (!(kappa > 0.0)) throw std::domain_error("PhysicalAtom: kappa must be positive");
}

PhysicalAtom PhysicalAtom::cesium_d2() {
    PhysicalAtom atom;
    atom.mass = 2.20694650e-25;  // kg, 133Cs
    atom.kappa = 2.0 * std::numbers::pi / 852e-9;
    atom.gravity = 9.81;
    return atom;
}

UnitSystem UnitSystem::for_atom(const PhysicalAtom& atom) {
    atom.validate();
    UnitSystem u;
    u.length = 1.0 / atom.kappa;
    u.momentum = hbar_si * atom.kappa;
    u.velocity = hbar_si * atom.kappa / atom.mass;
    u.energy = hbar_si * hbar_si * atom.kappa * atom.kappa / atom.mass;
    u.time = atom.mass / (hbar_si * atom.kappa * atom.kappa);
    u.frequency = 1.0 / u.time;
    return u;
}

ScaledState make_scaled(double P_i, double Q) {
    if (!(P_i > 0.0)) throw std::domain_error("make_scaled: P_i must be positive");
    if (Q < 0.0) throw std::domain_error("make_scaled: Q must be non-negative");
    ScaledState s;
    s.P_i = P_i;
    s.Q = Q;
    s.tau = 1.0 / P_i;
    s.q = Q;  // q/(hbar kappa) = omega*tau identically
    return s;
}

ScaledState scale_incident(double p_si, const PhysicalAtom& atom, double omega_si) {
    atom.validate();
    if (!(p_si > 0.0)) throw std::domain_error("scale_incident: momentum must be positive");
    if (omega_si < 0.0) throw std::domain_error("scale_incident: omega must be non-negative");
    const double tau_si = atom.mass / (atom.kappa * p_si);  // interaction time, seconds
    return make_scaled(p_si / (hbar_si * atom.kappa), omega_si * tau_si);
}

double unscale_momentum(const ScaledState& s, const PhysicalAtom& atom) {
    atom.validate();
    return s.P_i * hbar_si * atom.kappa;
}

double unscale_omega(const ScaledState& s, const PhysicalAtom& atom) {
    atom.validate();
    const double p_si = unscale_momentum(s, atom);
    return s.Q * atom.kappa * p_si / atom.mass;  // Q / tau
}

double omega_for_spacing(double q_scaled, double P_i, const PhysicalAtom& atom) {
    if (q_scaled < 0.0) throw std::domain_error("omega_for_spacing: q must be non-negative");
    return unscale_omega(make_scaled(P_i, q_scaled), atom);
}

double bounce_height(double p_si, const PhysicalAtom& atom) {
    atom.validate();
    if (p_si < 0.0) throw std::domain_error("bounce_height: momentum must be non-negative");
    if (!(atom.gravity > 0.0)) throw std::domain_error("bounce_height: gravity must be positive");
    const double v = p_si / atom.mass;
    return v * v / (2.0 * atom.gravity);
}

}  // namespace vibmirror
