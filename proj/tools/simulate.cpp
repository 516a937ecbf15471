// Batch front-end: runs one method (or a preset) and writes figure-ready
// CSV/JSON data files.
//
//   simulate <method> [--preset NAME] [--config FILE] [--set key=val ...]
//            [--out PATH] [--format csv|json] [--jobs N]
//   simulate list-presets
//
// Exit codes: 0 success, 2 config error, 3 numerical failure.

#include <CLI11.hpp>
#include <iostream>

#include "vibmirror/experiment.hpp"
#include "vibmirror/tdse.hpp"

int main(int argc, char** argv) {
    CLI::App app{"simulation of atoms bouncing on an intensity-modulated evanescent-wave mirror"};
    std::string method;
    std::string preset_name, config_file, out_path, format;
    std::vector<std::string> overrides;
    int jobs = -1;
    app.add_option("method", method,
                   "born | semiclassical | tdse | classical | interferometer | compare | units "
                   "| list-presets")
        ->required();
    app.add_option("--preset", preset_name, "start from a named preset");
    app.add_option("--config", config_file, "load a key = value config file");
    app.add_option("--set", overrides, "override one key=value");
    app.add_option("--out", out_path, "output path stem");
    app.add_option("--format", format, "csv or json");
    app.add_option("--jobs", jobs, "worker threads for sweeps (default: machine parallelism)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    using namespace vibmirror;
    try {
        if (method == "list-presets") {
            for (const auto& p : presets())
                std::cout << p.name << "  -  " << p.description << "\n";
            return 0;
        }
        ExperimentConfig cfg;
        if (!preset_name.empty()) {
            const Preset* p = find_preset(preset_name);
            if (!p) throw ConfigError("unknown preset '" + preset_name + "'");
            cfg = p->config;
        }
        if (!config_file.empty()) cfg = parse_config_file(config_file);
        if (!preset_name.empty() || method != cfg.method) cfg.method = method;
        for (const auto& o : overrides) apply_override(cfg, o);
        if (!out_path.empty()) cfg.out_path = out_path;
        if (!format.empty()) cfg.format = format;
        if (jobs >= 0) cfg.jobs = jobs;
        const auto files = run_experiment(cfg);
        for (const auto& f : files) std::cout << f << "\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const PreconditionError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
