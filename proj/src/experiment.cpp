#include "vibmirror/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <mutex>
#include <sstream>
#include <thread>

#include "vibmirror/born.hpp"
#include "vibmirror/interferometer.hpp"
#include "vibmirror/mirror.hpp"
#include "vibmirror/semiclassical.hpp"
#include "vibmirror/tdse.hpp"
#include "vibmirror/units.hpp"

namespace vibmirror {

namespace {
constexpr const char* kVersion = "vibmirror 1.0.0";
}

std::string format_double(double v) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

// ---------------------------------------------------------------------
// config plumbing

namespace {

const std::vector<std::string> kMethods = {"born",      "semiclassical", "tdse", "classical",
                                           "interferometer", "compare",  "units"};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid number for '" + key + "': " + v);
    }
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer for '" + key + "': " + v);
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("invalid boolean for '" + key + "': " + v);
}

}  // namespace

void ExperimentConfig::validate() const {
    if (std::find(kMethods.begin(), kMethods.end(), method) == kMethods.end())
        throw ConfigError("unknown method '" + method + "'");
    if (!(P_i > 0.0)) throw ConfigError("P_i must be positive");
    if (Q < 0.0) throw ConfigError("Q must be non-negative");
    if (epsilon < 0.0 || epsilon > 1.0) throw ConfigError("epsilon must lie in [0, 1]");
    if (sweep_steps < 1) throw ConfigError("sweep_steps must be >= 1");
    if (!sweep_var.empty()) {
        if (!std::isfinite(sweep_start) || !std::isfinite(sweep_stop))
            throw ConfigError("sweep bounds must be finite");
        static const std::vector<std::string> ok = {"Q", "epsilon", "P_i", "phi", "t0_phase"};
        if (std::find(ok.begin(), ok.end(), sweep_var) == ok.end())
            throw ConfigError("unknown sweep variable '" + sweep_var + "'");
    }
    if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
    if (out_path.empty()) throw ConfigError("out_path must not be empty");
    if (n_points < 16) throw ConfigError("n_points too small");
    if (jobs < 0) throw ConfigError("jobs must be >= 0");
    if (n_phases < 4) throw ConfigError("n_phases must be >= 4");
    if (theta_steps < 2) throw ConfigError("theta_steps must be >= 2");
    for (double e : {eps1, eps2, eps3})
        if (e < 0.0 || e > 1.0) throw ConfigError("per-bounce depths must lie in [0, 1]");
}

std::map<std::string, std::string> ExperimentConfig::to_map() const {
    std::map<std::string, std::string> kv;
    kv["method"] = method;
    kv["P_i"] = format_double(P_i);
    kv["Q"] = format_double(Q);
    kv["epsilon"] = format_double(epsilon);
    kv["phi"] = format_double(phi);
    kv["v0_over_Ei"] = format_double(v0_over_Ei);
    kv["z_min"] = format_double(z_min);
    kv["z_max"] = format_double(z_max);
    kv["n_points"] = std::to_string(n_points);
    kv["dt"] = format_double(dt);
    kv["z_i"] = format_double(z_i);
    kv["dz_i"] = format_double(dz_i);
    kv["dump_wavepacket"] = dump_wavepacket ? "true" : "false";
    kv["overlay_prediction"] = overlay_prediction ? "true" : "false";
    kv["n_phases"] = std::to_string(n_phases);
    kv["eps1"] = format_double(eps1);
    kv["eps2"] = format_double(eps2);
    kv["eps3"] = format_double(eps3);
    kv["theta_steps"] = std::to_string(theta_steps);
    kv["sweep_var"] = sweep_var;
    kv["sweep_start"] = format_double(sweep_start);
    kv["sweep_stop"] = format_double(sweep_stop);
    kv["sweep_steps"] = std::to_string(sweep_steps);
    kv["out_path"] = out_path;
    kv["format"] = format;
    kv["jobs"] = std::to_string(jobs);
    return kv;
}

ExperimentConfig ExperimentConfig::from_map(const std::map<std::string, std::string>& kv) {
    ExperimentConfig c;
    for (const auto& [key, v] : kv) {
        if (key == "method") c.method = v;
        else if (key == "P_i") c.P_i = parse_double(key, v);
        else if (key == "Q" || key == "q") c.Q = parse_double(key, v);
        else if (key == "epsilon") c.epsilon = parse_double(key, v);
        else if (key == "phi") c.phi = parse_double(key, v);
        else if (key == "v0_over_Ei") c.v0_over_Ei = parse_double(key, v);
        else if (key == "z_min") c.z_min = parse_double(key, v);
        else if (key == "z_max") c.z_max = parse_double(key, v);
        else if (key == "n_points") c.n_points = parse_int(key, v);
        else if (key == "dt") c.dt = parse_double(key, v);
        else if (key == "z_i") c.z_i = parse_double(key, v);
        else if (key == "dz_i") c.dz_i = parse_double(key, v);
        else if (key == "dump_wavepacket") c.dump_wavepacket = parse_bool(key, v);
        else if (key == "overlay_prediction") c.overlay_prediction = parse_bool(key, v);
        else if (key == "n_phases") c.n_phases = parse_int(key, v);
        else if (key == "eps1") c.eps1 = parse_double(key, v);
        else if (key == "eps2") c.eps2 = parse_double(key, v);
        else if (key == "eps3") c.eps3 = parse_double(key, v);
        else if (key == "theta_steps") c.theta_steps = parse_int(key, v);
        else if (key == "sweep_var") c.sweep_var = v;
        else if (key == "sweep_start") c.sweep_start = parse_double(key, v);
        else if (key == "sweep_stop") c.sweep_stop = parse_double(key, v);
        else if (key == "sweep_steps") c.sweep_steps = parse_int(key, v);
        else if (key == "out_path") c.out_path = v;
        else if (key == "format") c.format = v;
        else if (key == "jobs") c.jobs = parse_int(key, v);
        else throw ConfigError("unknown key '" + key + "'");
    }
    return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
        kv[trim(s.substr(0, eq))] = trim(s.substr(eq + 1));
    }
    try {
        return ExperimentConfig::from_map(kv);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void apply_override(ExperimentConfig& cfg, const std::string& key_eq_val) {
    const auto eq = key_eq_val.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got " + key_eq_val);
    auto kv = cfg.to_map();
    kv[trim(key_eq_val.substr(0, eq))] = trim(key_eq_val.substr(eq + 1));
    cfg = ExperimentConfig::from_map(kv);
}

void write_config_file(const ExperimentConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file: " + path);
    for (const auto& [k, v] : cfg.to_map()) out << k << " = " << v << "\n";
}

// ---------------------------------------------------------------------
// presets

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = [] {
        std::vector<Preset> v;
        {
            ExperimentConfig c;
            c.method = "compare";
            c.P_i = 100.0;
            c.epsilon = 1.0;
            c.sweep_var = "Q";
            c.sweep_start = 2.0;
            c.sweep_stop = 8.0;
            c.sweep_steps = 13;
            c.z_max = 28.0;
            c.out_path = "fig1";
            v.push_back({"fig1", "n=+-1 sideband heights vs Q for the three methods", c});
        }
        {
            ExperimentConfig c;
            c.method = "tdse";
            c.P_i = 100.0;
            c.Q = 5.0;
            c.epsilon = 1.0;
            c.dump_wavepacket = true;
            c.out_path = "fig3";
            v.push_back({"fig3", "wavepacket bounce at q = 5, full modulation", c});
        }
        {
            ExperimentConfig c;
            c.method = "tdse";
            c.P_i = 100.0;
            c.Q = 4.2;
            c.epsilon = 0.6;
            c.overlay_prediction = true;
            c.z_max = 28.0;
            c.out_path = "fig4a";
            v.push_back({"fig4a", "momentum spectrum at q = 4.2, depth 0.6", c});
        }
        {
            ExperimentConfig c;
            c.method = "tdse";
            c.P_i = 100.0;
            c.Q = 4.2;
            c.epsilon = 1.0;
            c.overlay_prediction = true;
            c.z_max = 28.0;
            c.out_path = "fig4b";
            v.push_back({"fig4b", "momentum spectrum at q = 4.2, full depth", c});
        }
        {
            ExperimentConfig c;
            c.method = "interferometer";
            c.P_i = 100.0;
            c.Q = 4.2;
            c.eps1 = 0.6;
            c.eps2 = 1.0;
            c.eps3 = 0.6;
            c.out_path = "section6-optimum";
            v.push_back({"section6-optimum", "three-bounce fringe optimum", c});
        }
        {
            ExperimentConfig c;
            c.method = "units";
            c.P_i = 100.0;
            c.Q = 4.2;
            c.out_path = "cesium-units";
            v.push_back({"cesium-units", "physical-unit checks for the cesium example", c});
        }
        return v;
    }();
    return all;
}

const Preset* find_preset(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return &p;
    return nullptr;
}

// ---------------------------------------------------------------------
// result tables

std::string ResultTable::to_csv() const {
    std::ostringstream os;
    for (const auto& [k, v] : meta) os << "# " << k << " = " << v << "\n";
    for (size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
        os << "\n";
    }
    return os.str();
}

std::string ResultTable::to_json() const {
    std::ostringstream os;
    os << "{\n  \"meta\": {";
    for (size_t i = 0; i < meta.size(); ++i)
        os << (i ? ", " : "") << "\"" << meta[i].first << "\": \"" << meta[i].second << "\"";
    os << "},\n  \"columns\": [";
    for (size_t i = 0; i < columns.size(); ++i)
        os << (i ? ", " : "") << "\"" << columns[i] << "\"";
    os << "],\n  \"rows\": [\n";
    for (size_t r = 0; r < rows.size(); ++r) {
        os << "    [";
        for (size_t i = 0; i < rows[r].size(); ++i)
            os << (i ? ", " : "") << format_double(rows[r][i]);
        os << "]" << (r + 1 < rows.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

// ---------------------------------------------------------------------
// experiment execution

namespace {

std::vector<double> sweep_values(const ExperimentConfig& cfg) {
    if (cfg.sweep_var.empty() || cfg.sweep_steps == 1)
        return {cfg.sweep_var.empty() ? 0.0 : cfg.sweep_start};
    std::vector<double> v(static_cast<size_t>(cfg.sweep_steps));
    for (int i = 0; i < cfg.sweep_steps; ++i)
        v[static_cast<size_t>(i)] =
            cfg.sweep_start + (cfg.sweep_stop - cfg.sweep_start) * i / (cfg.sweep_steps - 1);
    return v;
}

ExperimentConfig at_sweep_point(const ExperimentConfig& cfg, double x) {
    ExperimentConfig c = cfg;
    if (cfg.sweep_var == "Q") c.Q = x;
    else if (cfg.sweep_var == "epsilon") c.epsilon = x;
    else if (cfg.sweep_var == "P_i") c.P_i = x;
    else if (cfg.sweep_var == "phi") c.phi = x;
    return c;
}

void attach_meta(ResultTable& t, const ExperimentConfig& cfg) {
    t.meta.emplace_back("version", kVersion);
    for (const auto& [k, v] : cfg.to_map()) t.meta.emplace_back(k, v);
}

std::string write_table(const ResultTable& t, const std::string& path,
                        const std::string& format) {
    const std::string name = path + "." + format;
    std::ofstream out(name, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file: " + name);
    out << (format == "csv" ? t.to_csv() : t.to_json());
    return name;
}

ReflectionConfig reflection_config(const ExperimentConfig& cfg) {
    ReflectionConfig rc;
    rc.P_i = cfg.P_i;
    rc.Q = cfg.Q;
    rc.epsilon = cfg.epsilon;
    rc.phi = cfg.phi;
    rc.v0_over_Ei = cfg.v0_over_Ei;
    rc.z_i = cfg.z_i;
    rc.dz_i = cfg.dz_i;
    rc.grid.z_min = cfg.z_min;
    rc.grid.z_max = cfg.z_max;
    rc.grid.n_points = cfg.n_points;
    rc.grid.dt = cfg.dt;
    return rc;
}

// tdse sideband heights at one sweep point, normalized by a matching
// reference run
struct TdsePoint {
    double h_minus = 0.0, h_plus = 0.0, h_zero = 0.0;
};

TdsePoint tdse_point(const ExperimentConfig& cfg) {
    ReflectionConfig rc = reflection_config(cfg);
    ReflectionConfig ref = rc;
    ref.epsilon = 0.0;
    const ReflectionOutcome r0 = run_reflection(ref);
    const ReflectionOutcome r1 = run_reflection(rc, r0.carrier_peak);
    TdsePoint p;
    for (const auto& m : r1.sidebands) {
        if (m.order == -1) p.h_minus = m.height;
        if (m.order == 0) p.h_zero = m.height;
        if (m.order == +1) p.h_plus = m.height;
    }
    return p;
}

template <typename F>
auto parallel_map(const std::vector<double>& xs, int jobs, F f)
    -> std::vector<decltype(f(0.0))> {
    using R = decltype(f(0.0));
    const int nj = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
    std::vector<R> out(xs.size());
    std::vector<std::future<void>> pending;
    size_t next = 0;
    std::mutex mu;
    auto worker = [&]() {
        while (true) {
            size_t i;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= xs.size()) return;
                i = next++;
            }
            out[i] = f(xs[i]);
        }
    };
    const int n_threads = std::max(1, std::min<int>(nj, static_cast<int>(xs.size())));
    for (int t = 0; t < n_threads; ++t)
        pending.push_back(std::async(std::launch::async, worker));
    for (auto& p : pending) p.get();
    return out;
}

ResultTable run_born(const ExperimentConfig& cfg) {
    ResultTable t;
    t.columns = {"Q",      "W_plus", "W_minus", "W_plus_flux", "W_minus_flux",
                 "P_plus", "P_minus", "ratio_exact", "ratio_approx", "perturbative"};
    for (double x : sweep_values(cfg)) {
        const ExperimentConfig c = at_sweep_point(cfg, x);
        const BornResult b = born_first_sidebands(c.P_i, c.Q, c.epsilon);
        const AsymmetryRatio a = asymmetry_ratio(c.P_i, c.Q);
        t.rows.push_back({c.Q, b.W_plus, b.W_minus, b.W_plus_flux, b.W_minus_flux, b.P_f_plus,
                          b.P_f_minus, a.exact, a.approx, b.perturbative_ok ? 1.0 : 0.0});
    }
    return t;
}

ResultTable run_semiclassical(const ExperimentConfig& cfg) {
    ResultTable t;
    t.columns = {"Q", "u", "beta", "w0", "w1", "w2", "w3", "unitarity", "valid"};
    for (double x : sweep_values(cfg)) {
        const ExperimentConfig c = at_sweep_point(cfg, x);
        const ScaledState st = make_scaled(c.P_i, c.Q);
        MirrorConfig m;
        m.V0 = (c.v0_over_Ei > 0.0 ? c.v0_over_Ei : std::exp(10.0)) * 0.5 * c.P_i * c.P_i;
        m.epsilon = c.epsilon;
        m.omega = c.Q * c.P_i;
        m.phi = c.phi;
        const SidebandSpectrum sp = sideband_amplitudes(st, m);
        const ValidityReport rep = validity_report(st, m);
        t.rows.push_back({c.Q, sp.u, beta(c.Q), sp.weight(0), sp.weight(1), sp.weight(2),
                          sp.weight(3), sp.unitarity_sum(), rep.all_ok() ? 1.0 : 0.0});
    }
    return t;
}

std::vector<std::string> run_tdse(const ExperimentConfig& cfg) {
    std::vector<std::string> files;
    if (!cfg.sweep_var.empty() && cfg.sweep_steps > 1) {
        ResultTable t;
        t.columns = {"Q", "h_minus1", "h_plus1", "h_zero"};
        const auto xs = sweep_values(cfg);
        const auto points = parallel_map(xs, cfg.jobs, [&](double x) {
            return tdse_point(at_sweep_point(cfg, x));
        });
        for (size_t i = 0; i < xs.size(); ++i) {
            const ExperimentConfig c = at_sweep_point(cfg, xs[i]);
            t.rows.push_back({c.Q, points[i].h_minus, points[i].h_plus, points[i].h_zero});
        }
        attach_meta(t, cfg);
        files.push_back(write_table(t, cfg.out_path, cfg.format));
        return files;
    }

    // single point: reference + modulated run, full spectrum export
    ReflectionConfig rc = reflection_config(cfg);
    ReflectionConfig ref = rc;
    ref.epsilon = 0.0;
    const ReflectionOutcome r0 = run_reflection(ref);
    const ReflectionOutcome r1 = run_reflection(rc, r0.carrier_peak);

    ResultTable spec;
    spec.columns = {"p", "re", "im", "abs2"};
    if (cfg.overlay_prediction) spec.columns.push_back("semiclassical_abs2");
    std::vector<double> axis;
    const auto& sp = r1.spectrum;
    std::vector<double> pred;
    const double p_lo = 0.0, p_hi = 1.6 * cfg.P_i;
    if (cfg.overlay_prediction) {
        for (size_t k = 0; k < sp.p.size(); ++k)
            if (sp.p[k] >= p_lo && sp.p[k] <= p_hi) axis.push_back(sp.p[k]);
        const ScaledState st = make_scaled(cfg.P_i, cfg.Q);
        pred = predicted_spectrum(axis, PacketParams{cfg.P_i, 1.0 / (2.0 * cfg.dz_i)}, st,
                                  rc.mirror());
    }
    size_t ax = 0;
    for (size_t k = 0; k < sp.p.size(); ++k) {
        if (sp.p[k] < p_lo || sp.p[k] > p_hi) continue;
        std::vector<double> row = {sp.p[k], sp.amplitude[k].real(), sp.amplitude[k].imag(),
                                   sp.density[k] / r0.carrier_peak};
        if (cfg.overlay_prediction) {
            // prediction normalized the same way: reference peak = Gaussian peak
            const double gpeak = 1.0 / (std::sqrt(2.0 * std::acos(-1.0)) * (1.0 / (2.0 * cfg.dz_i)));
            row.push_back(pred[ax++] / gpeak);
        }
        spec.rows.push_back(std::move(row));
    }
    attach_meta(spec, cfg);
    spec.meta.emplace_back("t_measure", format_double(r1.t_measure));
    spec.meta.emplace_back("norm_drift", format_double(r1.diag.max_norm_drift));
    spec.meta.emplace_back("lost_fraction", format_double(r1.diag.max_lost_fraction));
    files.push_back(write_table(spec, cfg.out_path + "_spectrum", cfg.format));

    ResultTable bands;
    bands.columns = {"n", "momentum", "height"};
    for (const auto& m : r1.sidebands)
        bands.rows.push_back({static_cast<double>(m.order), m.momentum, m.height});
    attach_meta(bands, cfg);
    files.push_back(write_table(bands, cfg.out_path + "_sidebands", cfg.format));

    if (cfg.dump_wavepacket) {
        ResultTable wp;
        wp.columns = {"z", "re", "im", "abs2"};
        const auto& st = r1.state;
        for (int i = 0; i < st.grid.n_points; ++i)
            wp.rows.push_back({st.grid.z_at(i), st.psi[i].real(), st.psi[i].imag(),
                               std::norm(st.psi[i])});
        attach_meta(wp, cfg);
        files.push_back(write_table(wp, cfg.out_path + "_wavepacket", cfg.format));
    }
    return files;
}

ResultTable run_classical(const ExperimentConfig& cfg) {
    MirrorConfig m;
    m.V0 = (cfg.v0_over_Ei > 0.0 ? cfg.v0_over_Ei : std::exp(10.0)) * 0.5 * cfg.P_i * cfg.P_i;
    m.epsilon = cfg.epsilon;
    m.omega = cfg.Q * cfg.P_i;
    ResultTable t;
    t.columns = {"t0_phase", "omega_t0", "dE_over_E", "predicted"};
    const double amp = 2.0 * cfg.epsilon * cfg.Q * beta(cfg.Q);
    for (int j = 0; j < cfg.n_phases; ++j) {
        const double ph = 2.0 * std::acos(-1.0) * j / cfg.n_phases;
        const BounceResult b = classical_bounce_ode(cfg.P_i, m, ph);
        t.rows.push_back({ph, b.omega_t0, b.energy_kick / b.E_i, -amp * std::cos(b.omega_t0)});
    }
    return t;
}

ResultTable run_interferometer(const ExperimentConfig& cfg) {
    const FringeOptimum opt = optimize_fringe();
    const InterferometerPlan plan =
        plan_from_physics(cfg.P_i, cfg.Q, {cfg.eps1, cfg.eps2, cfg.eps3});
    ResultTable t;
    t.columns = {"theta", "F_plan", "F_optimum"};
    for (int i = 0; i < cfg.theta_steps; ++i) {
        const double th = 2.0 * std::acos(-1.0) * i / (cfg.theta_steps - 1);
        t.rows.push_back({th, fringe_amplitude(plan.u[0], plan.u[1], plan.u[2], th),
                          fringe_amplitude(opt.u1, opt.u2, opt.u3, th)});
    }
    t.meta.emplace_back("u_optimum",
                        format_double(opt.u1) + "," + format_double(opt.u2) + "," +
                            format_double(opt.u3));
    t.meta.emplace_back("F_max", format_double(opt.F_max));
    t.meta.emplace_back("plan", plan.to_json());
    return t;
}

ResultTable run_units(const ExperimentConfig& cfg) {
    const PhysicalAtom cs = PhysicalAtom::cesium_d2();
    const UnitSystem us = UnitSystem::for_atom(cs);
    const double p = cfg.P_i * us.momentum;
    ResultTable t;
    t.columns = {"P_i", "velocity_m_per_s", "bounce_height_m", "omega_rad_per_s",
                 "frequency_Hz", "q_scaled"};
    const double omega = omega_for_spacing(cfg.Q, cfg.P_i, cs);
    t.rows.push_back({cfg.P_i, p / cs.mass, bounce_height(p, cs), omega,
                      omega / (2.0 * std::acos(-1.0)), cfg.Q});
    return t;
}

ResultTable run_compare(const ExperimentConfig& cfg) {
    ResultTable t;
    t.columns = {"Q",        "born_plus_flux", "born_minus_flux", "semiclassical_w1",
                 "tdse_h_plus1", "tdse_h_minus1"};
    const auto xs = sweep_values(cfg);
    const auto points = parallel_map(xs, cfg.jobs, [&](double x) {
        return tdse_point(at_sweep_point(cfg, x));
    });
    for (size_t i = 0; i < xs.size(); ++i) {
        const ExperimentConfig c = at_sweep_point(cfg, xs[i]);
        const BornResult b = born_first_sidebands(c.P_i, c.Q, c.epsilon);
        const double u = modulation_index(c.P_i, c.Q, c.epsilon);
        const double j1 = bessel_j(1, u);
        t.rows.push_back({c.Q, b.W_plus_flux, b.W_minus_flux, j1 * j1, points[i].h_plus,
                          points[i].h_minus});
    }
    return t;
}

}  // namespace

std::vector<std::string> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.method == "tdse") return run_tdse(cfg);
    ResultTable t;
    if (cfg.method == "born") t = run_born(cfg);
    else if (cfg.method == "semiclassical") t = run_semiclassical(cfg);
    else if (cfg.method == "classical") t = run_classical(cfg);
    else if (cfg.method == "interferometer") t = run_interferometer(cfg);
    else if (cfg.method == "units") t = run_units(cfg);
    else if (cfg.method == "compare") t = run_compare(cfg);
    attach_meta(t, cfg);
    return {write_table(t, cfg.out_path, cfg.format)};
}

}  // namespace vibmirror
