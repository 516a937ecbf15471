#ifndef VIBMIRROR_TDSE_HPP
#define VIBMIRROR_TDSE_HPP

#include <complex>
#include <stdexcept>
#include <vector>

#include "vibmirror/mirror.hpp"
#include "vibmirror/semiclassical.hpp"

namespace vibmirror {

using cplx = std::complex<double>;

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Uniform spatial grid in a box with Dirichlet walls.  dt = 0 picks the
// default time step (half the RK4 stability bound for the kinetic
// operator, which keeps the norm drift per bounce below 1e-6).
struct GridSpec {
    double z_min = -25.0;
    double z_max = 25.0;
    int n_points = 8192;
    double dt = 0.0;

    double dz() const { return (z_max - z_min) / (n_points - 1); }
    double stability_dt() const;  // 0.5 * (2/pi^2) * dz^2
    double effective_dt() const;  // dt, or stability_dt()/2 when dt == 0
    double z_at(int i) const { return z_min + dz() * i; }
    // Requires dz <= 2 pi / (8 P_max): at least 8 samples per shortest
    // de Broglie wavelength.  Throws std::domain_error on violation.
    void validate(double P_max) const;
};

struct WavepacketState {
    GridSpec grid;
    std::vector<cplx> psi;
    double t = 0.0;

    double norm_sq() const;                // integral of |psi|^2
    double mean_z() const;
    double mean_potential(const MirrorConfig& cfg) const;  // static part
    double fraction_below(double z) const;
};

// Gaussian packet with mean z_i, position spread dz_i, carrier momentum
// -p_i (moving toward the mirror) and unit norm.  delta_p = 1/(2 dz_i).
// Throws std::domain_error when the packet overlaps the mirror region or
// the box walls beyond 1e-8 probability.
WavepacketState init_gaussian(double z_i, double dz_i, double p_i, const GridSpec& grid,
                              double turning_point = 5.0);

struct EvolveOptions {
    // Static potential is clamped at v_cap (absolute energy, 0 = none).
    // The exponential wall rises to e^10 E_i at z = 0, far beyond what any
    // explicit integrator can follow; clamping at 25 E_i leaves the
    // barrier opaque (transmission ~ e^-350) and keeps RK4 stable.
    double v_cap = 0.0;
    double norm_tol = 1e-4;  // relative norm drift that aborts the run
    int check_every = 512;
};

struct EvolveDiagnostics {
    double max_norm_drift = 0.0;     // max |norm^2/norm0^2 - 1| seen
    double max_lost_fraction = 0.0;  // max probability at z < 0 seen
    long steps = 0;
};

// Integrates i dpsi/dt = [-(1/2) d2/dz2 + V(z,t)] psi with classical RK4;
// 5-point 4th-order central stencil, Dirichlet boundaries.  Advances the
// state in place to t_end.  Throws NumericError if the norm drifts by
// more than norm_tol.
EvolveDiagnostics evolve(WavepacketState& state, const MirrorConfig& cfg, double t_end,
                         const EvolveOptions& opts = {});

struct MomentumSpectrum {
    std::vector<double> p;        // momentum axis (ascending)
    std::vector<cplx> amplitude;  // psi-bar(p)
    std::vector<double> density;  // |psi-bar(p)|^2
    double bin = 0.0;             // axis spacing (zero-padded FFT)
    double raw_bin = 0.0;         // 2 pi / box length

    int index_near(double pv) const;
    double density_at(double pv) const;
    cplx amplitude_at(double pv) const;
};

// Fourier transform psi-bar(p) = (1/sqrt(2 pi)) integral psi(z) e^{-ipz} dz,
// sampled by an FFT zero-padded pad_factor times (trigonometric
// interpolation of the finite-box transform).  Requires the packet to be
// clear of the potential: <V>/<E> < interaction_tol, else throws
// PreconditionError.
MomentumSpectrum momentum_spectrum(const WavepacketState& state, const MirrorConfig& cfg,
                                   double interaction_tol = 1e-6, int pad_factor = 8);

// Semiclassical prediction on a given momentum axis: the sideband comb
// dressed with the momentum-space Gaussian of the packet, |a_n|^2
// weighted, a_n evaluated at the incident momentum p - n q.
struct PacketParams {
    double p_i;
    double delta_p;
};
std::vector<double> predicted_spectrum(const std::vector<double>& p_axis,
                                       const PacketParams& packet, const ScaledState& state,
                                       const MirrorConfig& cfg,
                                       MomentumRule rule = MomentumRule::exact);

// ---------------------------------------------------------------------
// High-level single-reflection experiment.

struct ReflectionConfig {
    double P_i = 100.0;
    double Q = 4.2;
    double epsilon = 1.0;
    double phi = 0.0;
    double v0_over_Ei = 0.0;  // 0 -> default e^10
    double v_cap_over_Ei = 25.0;
    double z_i = 13.0;
    double dz_i = 2.0;
    GridSpec grid{};
    int n_keep = 3;               // sideband orders to extract
    double interaction_tol = 1e-6;
    double z_clear = 17.6;        // slow-component center required before measuring
    double t_extra = 0.0;         // extra free evolution before measuring
    int pad_factor = 8;

    MirrorConfig mirror() const;
    double E_i() const { return 0.5 * P_i * P_i; }
    double xi_eff() const;
    // Time at which the slowest significant component has reached z_clear.
    double measure_time() const;
    // Exact momentum of the highest kept open sideband, for grid checks.
    double P_max() const;
};

struct SidebandMeasurement {
    int order;
    double momentum;   // exact-dispersion assignment
    double height;     // |psi-bar|^2 at the nearest bin / reference peak
    cplx amplitude;    // psi-bar at that bin / sqrt(reference peak)
};

struct ReflectionOutcome {
    WavepacketState state;
    MomentumSpectrum spectrum;
    EvolveDiagnostics diag;
    double t_measure = 0.0;
    double carrier_peak = 0.0;  // max |psi-bar|^2 near +P_i (unnormalized)
    std::vector<SidebandMeasurement> sidebands;
};

// Runs one bounce and extracts the sideband table.  reference_peak is the
// carrier peak of a matching epsilon = 0 run (0 when this run *is* the
// reference; heights are then unnormalized).
ReflectionOutcome run_reflection(const ReflectionConfig& cfg, double reference_peak = 0.0);

}  // namespace vibmirror

#endif
