#ifndef VIBMIRROR_EXPERIMENT_HPP
#define VIBMIRROR_EXPERIMENT_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vibmirror {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key = value experiment description.  Unknown keys are rejected
// with the offending line quoted.
struct ExperimentConfig {
    std::string method = "semiclassical";  // born | semiclassical | tdse | classical
                                           // | interferometer | compare | units
    // physics
    double P_i = 100.0;
    double Q = 4.2;  // == q in scaled units
    double epsilon = 1.0;
    double phi = 0.0;
    double v0_over_Ei = 0.0;  // 0 -> default e^10
    // tdse grid overrides
    double z_min = -25.0, z_max = 25.0;
    int n_points = 8192;
    double dt = 0.0;
    double z_i = 13.0, dz_i = 2.0;
    bool dump_wavepacket = false;
    bool overlay_prediction = false;  // add semiclassical column to tdse spectra
    // classical oracle
    int n_phases = 16;
    // interferometer
    double eps1 = 0.6, eps2 = 1.0, eps3 = 0.6;
    int theta_steps = 64;
    // sweep
    std::string sweep_var;  // empty -> single point
    double sweep_start = 0.0, sweep_stop = 0.0;
    int sweep_steps = 1;
    // output
    std::string out_path = "out";
    std::string format = "csv";  // csv | json
    int jobs = 0;                // 0 -> hardware concurrency

    void validate() const;
    std::map<std::string, std::string> to_map() const;
    static ExperimentConfig from_map(const std::map<std::string, std::string>& kv);
};

ExperimentConfig parse_config_file(const std::string& path);
void apply_override(ExperimentConfig& cfg, const std::string& key_eq_val);
void write_config_file(const ExperimentConfig& cfg, const std::string& path);

struct Preset {
    std::string name;
    std::string description;
    ExperimentConfig config;
};
const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);

// One table of results: metadata, column names, rows.  Numbers are
// formatted with the shortest round-trip representation so identical
// configs produce byte-identical files.
struct ResultTable {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::string to_csv() const;
    std::string to_json() const;
};

std::string format_double(double v);

// Runs the experiment and writes one file per produced table
// (<out_path>.csv / .json, plus suffixed companions for snapshots).
// Returns the written file names.
std::vector<std::string> run_experiment(const ExperimentConfig& cfg);

}  // namespace vibmirror

#endif
