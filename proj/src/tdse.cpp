#include "vibmirror/tdse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vibmirror/born.hpp"

namespace vibmirror {

namespace {
constexpr double pi = std::numbers::pi;
}

double GridSpec::stability_dt() const {
    const double h = dz();
    return 0.5 * (2.0 / (pi * pi)) * h * h;
}

double GridSpec::effective_dt() const { return dt > 0.0 ? dt : 0.5 * stability_dt(); }

void GridSpec::validate(double P_max) const {
    if (n_points < 16) throw std::domain_error("GridSpec: n_points too small");
    if (!(z_max > z_min)) throw std::domain_error("GridSpec: empty box");
    if (P_max > 0.0 && dz() > 2.0 * pi / (8.0 * P_max))
        throw std::domain_error(
            "GridSpec: dz too coarse, need at least 8 samples per de Broglie wavelength at P = " +
            std::to_string(P_max));
    if (dt > 0.0 && dt > stability_dt())
        throw std::domain_error("GridSpec: dt exceeds the RK4 kinetic stability bound");
}

double WavepacketState::norm_sq() const {
    double s = 0.0;
    for (const auto& c : psi) s += std::norm(c);
    return s * grid.dz();
}

double WavepacketState::mean_z() const {
    double s = 0.0;
    for (int i = 0; i < grid.n_points; ++i) s += std::norm(psi[i]) * grid.z_at(i);
    return s * grid.dz() / norm_sq();
}

double WavepacketState::mean_potential(const MirrorConfig& cfg) const {
    double s = 0.0;
    for (int i = 0; i < grid.n_points; ++i) {
        const double z = grid.z_at(i);
        if (z >= 0.0) s += std::norm(psi[i]) * cfg.V0 * std::exp(-2.0 * z);
    }
    return s * grid.dz() / norm_sq();
}

double WavepacketState::fraction_below(double z) const {
    double s = 0.0;
    for (int i = 0; i < grid.n_points && grid.z_at(i) < z; ++i) s += std::norm(psi[i]);
    return s * grid.dz();
}

WavepacketState init_gaussian(double z_i, double dz_i, double p_i, const GridSpec& grid,
                              double turning_point) {
    if (!(dz_i > 0.0)) throw std::domain_error("init_gaussian: dz_i must be positive");
    if (!(p_i > 0.0)) throw std::domain_error("init_gaussian: p_i must be positive");
    if (!(z_i - 3.0 * dz_i > turning_point))
        throw std::domain_error("init_gaussian: packet must start with z_i - 3 dz_i above the "
                                "classical turning point");
    // overlap with the mirror surface (z < 0) and the far wall
    const double below = 0.5 * std::erfc(z_i / (std::sqrt(2.0) * dz_i));
    const double above = 0.5 * std::erfc((grid.z_max - z_i) / (std::sqrt(2.0) * dz_i));
    if (below > 1e-8 || above > 1e-8)
        throw std::domain_error("init_gaussian: packet overlaps mirror or box wall beyond 1e-8");

    WavepacketState st;
    st.grid = grid;
    st.psi.assign(grid.n_points, cplx{0.0, 0.0});
    const double amp = std::pow(2.0 * pi * dz_i * dz_i, -0.25);
    for (int i = 1; i < grid.n_points - 1; ++i) {
        const double z = grid.z_at(i);
        const double g = amp * std::exp(-(z - z_i) * (z - z_i) / (4.0 * dz_i * dz_i));
        // carrier momentum -p_i: moving toward the mirror
        st.psi[i] = g * cplx{std::cos(p_i * z), -std::sin(p_i * z)};
    }
    const double n0 = std::sqrt(st.norm_sq());
    for (auto& c : st.psi) c /= n0;
    return st;
}

namespace {

// d(u)/dt = L v, d(v)/dt = -L u with L = -(1/2) d2/dz2 + V(z) m(t);
// 5-point stencil, boundary values pinned to zero.
struct Rk4Workspace {
    int n;
    double a0, a1, a2;       // kinetic stencil coefficients
    std::vector<double> vs;  // static potential (possibly clamped)
    std::vector<double> u0, v0, tu, tv, ku, kv, su, sv;

    Rk4Workspace(const GridSpec& g, const MirrorConfig& cfg, double v_cap) : n(g.n_points) {
        const double h2 = g.dz() * g.dz();
        a2 = 1.0 / (24.0 * h2);
        a1 = -16.0 / (24.0 * h2);
        a0 = 30.0 / (24.0 * h2);
        vs.assign(n, 0.0);
        for (int i = 0; i < n; ++i) {
            const double z = g.z_at(i);
            if (z >= 0.0) {
                double v = cfg.V0 * std::exp(-2.0 * z);
                if (v_cap > 0.0) v = std::min(v, v_cap);
                vs[i] = v;
            }
        }
        u0.resize(n); v0.resize(n); tu.resize(n); tv.resize(n);
        ku.resize(n); kv.resize(n); su.resize(n); sv.resize(n);
    }

    // ku = L(tv), kv = -L(tu) at modulation factor m
    void derivative(double m) {
        const double* RU = tu.data();
        const double* RV = tv.data();
        const double* V = vs.data();
        double* KU = ku.data();
        double* KV = kv.data();
        KU[0] = KV[0] = KU[n - 1] = KV[n - 1] = 0.0;
        auto lrow = [&](const double* x, int i) {
            double s = a0 * x[i] + a1 * (x[i - 1] + x[i + 1]);
            if (i >= 2) s += a2 * x[i - 2];
            if (i + 2 < n) s += a2 * x[i + 2];
            return s + m * V[i] * x[i];
        };
        KU[1] = lrow(RV, 1);
        KV[1] = -lrow(RU, 1);
        KU[n - 2] = lrow(RV, n - 2);
        KV[n - 2] = -lrow(RU, n - 2);
        for (int i = 2; i < n - 2; ++i) {
            KU[i] = a2 * (RV[i - 2] + RV[i + 2]) + a1 * (RV[i - 1] + RV[i + 1]) +
                    (a0 + m * V[i]) * RV[i];
        }
        for (int i = 2; i < n - 2; ++i) {
            KV[i] = -(a2 * (RU[i - 2] + RU[i + 2]) + a1 * (RU[i - 1] + RU[i + 1]) +
                      (a0 + m * V[i]) * RU[i]);
        }
    }

    void step(double t, double dt, const MirrorConfig& cfg) {
        // stage 1
        std::copy(u0.begin(), u0.end(), tu.begin());
        std::copy(v0.begin(), v0.end(), tv.begin());
        derivative(cfg.modulation(t));
        for (int i = 0; i < n; ++i) {
            su[i] = ku[i];
            sv[i] = kv[i];
            tu[i] = u0[i] + 0.5 * dt * ku[i];
            tv[i] = v0[i] + 0.5 * dt * kv[i];
        }
        // stage 2
        derivative(cfg.modulation(t + 0.5 * dt));
        for (int i = 0; i < n; ++i) {
            su[i] += 2.0 * ku[i];
            sv[i] += 2.0 * kv[i];
            tu[i] = u0[i] + 0.5 * dt * ku[i];
            tv[i] = v0[i] + 0.5 * dt * kv[i];
        }
        // stage 3
        derivative(cfg.modulation(t + 0.5 * dt));
        for (int i = 0; i < n; ++i) {
            su[i] += 2.0 * ku[i];
            sv[i] += 2.0 * kv[i];
            tu[i] = u0[i] + dt * ku[i];
            tv[i] = v0[i] + dt * kv[i];
        }
        // stage 4
        derivative(cfg.modulation(t + dt));
        const double w = dt / 6.0;
        for (int i = 0; i < n; ++i) {
            u0[i] += w * (su[i] + ku[i]);
            v0[i] += w * (sv[i] + kv[i]);
        }
        u0[0] = v0[0] = u0[n - 1] = v0[n - 1] = 0.0;
    }
};

}  // namespace

EvolveDiagnostics evolve(WavepacketState& state, const MirrorConfig& cfg, double t_end,
                         const EvolveOptions& opts) {
    cfg.validate();
    state.grid.validate(0.0);
    const double dt = state.grid.effective_dt();
    const int n = state.grid.n_points;
    Rk4Workspace ws(state.grid, cfg, opts.v_cap);
    for (int i = 0; i < n; ++i) {
        ws.u0[i] = state.psi[i].real();
        ws.v0[i] = state.psi[i].imag();
    }
    const double dz = state.grid.dz();
    double norm0 = 0.0;
    for (int i = 0; i < n; ++i) norm0 += ws.u0[i] * ws.u0[i] + ws.v0[i] * ws.v0[i];
    norm0 *= dz;

    int i_zero = 0;  // first index with z >= 0
    while (i_zero < n && state.grid.z_at(i_zero) < 0.0) ++i_zero;

    EvolveDiagnostics diag;
    auto sample = [&]() {
        double nr = 0.0, lost = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = ws.u0[i] * ws.u0[i] + ws.v0[i] * ws.v0[i];
            nr += d;
            if (i < i_zero) lost += d;
        }
        nr *= dz;
        lost *= dz;
        diag.max_norm_drift = std::max(diag.max_norm_drift, std::fabs(nr / norm0 - 1.0));
        diag.max_lost_fraction = std::max(diag.max_lost_fraction, lost);
        if (diag.max_norm_drift > opts.norm_tol)
            throw NumericError("evolve: norm drift " + std::to_string(diag.max_norm_drift) +
                               " exceeds " + std::to_string(opts.norm_tol) + " after " +
                               std::to_string(diag.steps) + " steps (dt=" + std::to_string(dt) +
                               ", n=" + std::to_string(n) + ")");
    };

    while (state.t < t_end - 1e-15) {
        const double step_dt = std::min(dt, t_end - state.t);
        ws.step(state.t, step_dt, cfg);
        state.t += step_dt;
        ++diag.steps;
        if (diag.steps % opts.check_every == 0) sample();
    }
    sample();
    for (int i = 0; i < n; ++i) state.psi[i] = cplx{ws.u0[i], ws.v0[i]};
    return diag;
}

// ---------------------------------------------------------------------
// momentum spectrum

namespace {

void fft_inplace(std::vector<cplx>& a) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {  // bit reversal
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * pi / static_cast<double>(len);
        const cplx wl{std::cos(ang), std::sin(ang)};
        for (size_t i = 0; i < n; i += len) {
            cplx w{1.0, 0.0};
            for (size_t k = 0; k < len / 2; ++k) {
                const cplx x = a[i + k];
                const cplx y = a[i + k + len / 2] * w;
                a[i + k] = x + y;
                a[i + k + len / 2] = x - y;
                w *= wl;
            }
        }
    }
}

size_t next_pow2(size_t x) {
    size_t p = 1;
    while (p < x) p <<= 1;
    return p;
}

}  // namespace

int MomentumSpectrum::index_near(double pv) const {
    const long i = std::lround((pv - p.front()) / bin);
    return static_cast<int>(std::clamp(i, 0L, static_cast<long>(p.size()) - 1L));
}

double MomentumSpectrum::density_at(double pv) const { return density[index_near(pv)]; }

cplx MomentumSpectrum::amplitude_at(double pv) const { return amplitude[index_near(pv)]; }

MomentumSpectrum momentum_spectrum(const WavepacketState& state, const MirrorConfig& cfg,
                                   double interaction_tol, int pad_factor) {
    // the packet must be clear of the potential
    const double meanV = state.mean_potential(cfg);
    // kinetic energy via the same stencil the evolution uses
    const int n = state.grid.n_points;
    const double h2 = state.grid.dz() * state.grid.dz();
    double meanT = 0.0;
    for (int i = 2; i < n - 2; ++i) {
        const cplx lap = (-state.psi[i - 2] + 16.0 * state.psi[i - 1] - 30.0 * state.psi[i] +
                          16.0 * state.psi[i + 1] - state.psi[i + 2]) /
                         (12.0 * h2);
        meanT += (std::conj(state.psi[i]) * (-0.5) * lap).real();
    }
    meanT *= state.grid.dz() / state.norm_sq();
    if (meanV / (meanT + meanV) > interaction_tol)
        throw PreconditionError("momentum_spectrum: packet still interacting, <V>/<E> = " +
                                std::to_string(meanV / (meanT + meanV)));

    const size_t n_pad = next_pow2(static_cast<size_t>(pad_factor) * state.psi.size());
    std::vector<cplx> work(n_pad, cplx{0.0, 0.0});
    std::copy(state.psi.begin(), state.psi.end(), work.begin());
    fft_inplace(work);

    MomentumSpectrum sp;
    const double dz = state.grid.dz();
    sp.bin = 2.0 * pi / (static_cast<double>(n_pad) * dz);
    sp.raw_bin = 2.0 * pi / (state.grid.z_max - state.grid.z_min);
    const double scale = dz / std::sqrt(2.0 * pi);
    sp.p.resize(n_pad);
    sp.amplitude.resize(n_pad);
    sp.density.resize(n_pad);
    // unwrap to an ascending momentum axis, and attach the phase from the
    // grid origin: psi-bar(p) = scale * e^{-i p z_min} * FFT
    const long half = static_cast<long>(n_pad / 2);
    for (long k = 0; k < static_cast<long>(n_pad); ++k) {
        const long idx = k - half;                       // ascending index
        const long src = (idx + static_cast<long>(n_pad)) % static_cast<long>(n_pad);
        const double pv = sp.bin * static_cast<double>(idx);
        const cplx ph{std::cos(pv * state.grid.z_min), -std::sin(pv * state.grid.z_min)};
        const cplx a = scale * ph * work[static_cast<size_t>(src)];
        sp.p[static_cast<size_t>(k)] = pv;
        sp.amplitude[static_cast<size_t>(k)] = a;
        sp.density[static_cast<size_t>(k)] = std::norm(a);
    }
    return sp;
}

std::vector<double> predicted_spectrum(const std::vector<double>& p_axis,
                                       const PacketParams& packet, const ScaledState& state,
                                       const MirrorConfig& cfg, MomentumRule rule) {
    const double dp = packet.delta_p;
    const double norm = 1.0 / (std::sqrt(2.0 * pi) * dp);
    const double u0 = modulation_index(state.P_i, state.Q, cfg.epsilon);
    const int n_range = static_cast<int>(std::ceil(u0)) + 8;
    const double omega = state.Q * state.P_i;

    std::vector<double> out(p_axis.size(), 0.0);
    for (int n = -n_range; n <= n_range; ++n) {
        if (!sideband_open(state.P_i, state.q, n)) continue;
        const double center = (rule == MomentumRule::exact)
                                  ? sideband_momentum_exact(state.P_i, state.q, n)
                                  : state.P_i + n * state.q;
        for (size_t k = 0; k < p_axis.size(); ++k) {
            const double x = p_axis[k] - center;
            if (std::fabs(x) > 8.0 * dp) continue;
            // a_n evaluated at the incident momentum p - n q
            const double P_inc = p_axis[k] - n * state.q;
            if (!(P_inc > 0.0)) continue;
            const double u = cfg.epsilon * P_inc * beta(omega / P_inc);
            const double jn = bessel_j(n, u);
            out[k] += jn * jn * norm * std::exp(-x * x / (2.0 * dp * dp));
        }
    }
    return out;
}

// ---------------------------------------------------------------------
// single-reflection experiment

MirrorConfig ReflectionConfig::mirror() const {
    MirrorConfig m;
    m.V0 = (v0_over_Ei > 0.0 ? v0_over_Ei : std::exp(10.0)) * E_i();
    m.epsilon = epsilon;
    m.omega = Q * P_i;
    m.phi = phi;
    return m;
}

double ReflectionConfig::xi_eff() const {
    const double v0 = v0_over_Ei > 0.0 ? v0_over_Ei : std::exp(10.0);
    return 0.5 * std::log(v0 / 4.0);
}

double ReflectionConfig::P_max() const {
    for (int n = n_keep; n > 0; --n)
        if (sideband_open(P_i, Q, n)) return sideband_momentum_exact(P_i, Q, n);
    return P_i;
}

double ReflectionConfig::measure_time() const {
    const double xi = xi_eff();
    const double t_bounce = (z_i - xi) / P_i;
    // slowest sideband still carrying weight >= 1e-4
    const double u = modulation_index(P_i, Q, epsilon);
    double P_slow = P_i;
    const int n_range = static_cast<int>(std::ceil(u)) + 10;
    for (int n = -1; n >= -n_range; --n) {
        if (!sideband_open(P_i, Q, n)) break;
        const double jn = bessel_j(n, u);
        if (jn * jn < 1e-4) break;
        P_slow = sideband_momentum_exact(P_i, Q, n);
    }
    return t_bounce + (z_clear - xi) / P_slow;
}

ReflectionOutcome run_reflection(const ReflectionConfig& cfg, double reference_peak) {
    GridSpec grid = cfg.grid;
    grid.validate(cfg.P_max());
    const MirrorConfig mirror = cfg.mirror();

    ReflectionOutcome out;
    out.state = init_gaussian(cfg.z_i, cfg.dz_i, cfg.P_i, grid,
                              0.5 * std::log(mirror.V0 / cfg.E_i()));
    out.t_measure = cfg.measure_time() + cfg.t_extra;

    EvolveOptions opts;
    opts.v_cap = cfg.v_cap_over_Ei > 0.0 ? cfg.v_cap_over_Ei * cfg.E_i() : 0.0;
    out.diag = evolve(out.state, mirror, out.t_measure, opts);
    out.spectrum = momentum_spectrum(out.state, mirror, cfg.interaction_tol, cfg.pad_factor);

    // carrier peak: maximum density in a half-spacing window around +P_i
    const double win = cfg.Q > 0.0 ? 0.5 * cfg.Q : 1.0;
    const int lo = out.spectrum.index_near(cfg.P_i - win);
    const int hi = out.spectrum.index_near(cfg.P_i + win);
    out.carrier_peak = 0.0;
    for (int k = lo; k <= hi; ++k)
        out.carrier_peak = std::max(out.carrier_peak, out.spectrum.density[k]);

    const double ref = reference_peak > 0.0 ? reference_peak : 1.0;
    for (int n = -cfg.n_keep; n <= cfg.n_keep; ++n) {
        if (!sideband_open(cfg.P_i, cfg.Q, n)) continue;
        SidebandMeasurement m;
        m.order = n;
        m.momentum = sideband_momentum_exact(cfg.P_i, cfg.Q, n);
        m.height = out.spectrum.density_at(m.momentum) / ref;
        m.amplitude = out.spectrum.amplitude_at(m.momentum) / std::sqrt(ref);
        out.sidebands.push_back(m);
    }
    return out;
}

}  // namespace vibmirror
