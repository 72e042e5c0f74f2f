#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pulsekit/bounds.hpp"
#include "pulsekit/experiment.hpp"
#include "pulsekit/io.hpp"
#include "pulsekit/plot.hpp"
#include "pulsekit/verify.hpp"

namespace {

using namespace pulsekit;
namespace fs = std::filesystem;

enum Exit { kOk = 0, kInvariant = 1, kConfig = 2 };

struct Flags {
    int length = 0;
    int cells = 0;
    double density = 0;
    double noise_db = 0;
    std::string methods;
    int trials = 0;
    std::uint64_t seed = 0;
    std::string out;
    std::string config;

    std::vector<CLI::Option*> opts;

    void attach(CLI::App& app)
    {
        opts = {
            app.add_option("--length", length, "signal length L"),
            app.add_option("--cells", cells, "scattering support size in grid cells"),
            app.add_option("--density", density, "lattice density (symbols per unit area)"),
            app.add_option("--noise-db", noise_db, "noise power in dB"),
            app.add_option("--methods", methods, "comma-separated subset of gauss,iota,svd,localg,localg-tight,sinralg"),
            app.add_option("--trials", trials, "Monte-Carlo channel draws per cell"),
            app.add_option("--seed", seed, "master seed"),
            app.add_option("--out", out, "output directory"),
        };
        app.add_option("--config", config, "JSON file with the same keys as the flags (noise-db as noise_db)")
            ->check(CLI::ExistingFile);
    }

    ExperimentConfig resolve() const
    {
        ExperimentConfig cfg;
        if (!config.empty()) {
            try {
                cfg.merge_json(io::read_json(config));
            } catch (const io::FormatError& e) {
                throw ConfigError(e.what());
            }
        }
        nlohmann::json overrides = nlohmann::json::object();
        const char* keys[] = {"length", "cells", "density", "noise_db", "methods", "trials", "seed", "out"};
        for (std::size_t i = 0; i < opts.size(); ++i) {
            if (!opts[i]->count())
                continue;
            switch (i) {
            case 0: overrides[keys[i]] = length; break;
            case 1: overrides[keys[i]] = cells; break;
            case 2: overrides[keys[i]] = density; break;
            case 3: overrides[keys[i]] = noise_db; break;
            case 4: overrides[keys[i]] = methods; break;
            case 5: overrides[keys[i]] = trials; break;
            case 6: overrides[keys[i]] = seed; break;
            case 7: overrides[keys[i]] = out; break;
            }
        }
        cfg.merge_json(overrides);
        return cfg;
    }
};

std::string cell_stem(const CellResult& r)
{
    return r.method + "_tau" + std::to_string(r.row.tau_d) + "_b" + std::to_string(r.row.doppler);
}

int cmd_run(const Flags& flags)
{
    const ExperimentConfig cfg = flags.resolve();
    cfg.validate();
    const fs::path out = cfg.out;
    fs::create_directories(out / "pulses");
    fs::create_directories(out / "traces");
    io::write_json(out / "config.json", cfg.to_json());

    const auto results = run_experiment(cfg);
    {
        std::ofstream csv(out / "results.csv");
        write_csv(csv, results);
    }
    for (const auto& r : results) {
        const nlohmann::json params = {{"tau_d", r.row.tau_d}, {"b_d", r.row.doppler}, {"L", cfg.L},
                                       {"a", r.lattice.a},     {"b", r.lattice.b},      {"noise_db", cfg.noise_db}};
        if (r.pair)
            io::write_pulses(out / "pulses" / cell_stem(r), {*r.pair, r.lattice, r.method, params});
        if (r.trace)
            io::write_json(out / "traces" / (cell_stem(r) + ".json"), io::trace_json(r.method, *r.trace, cfg.seed, params));
        if (!r.errors.empty())
            std::cerr << cell_stem(r) << ": " << r.errors << '\n';
    }
    std::cout << "wrote " << results.size() << " rows to " << (out / "results.csv").string() << '\n';
    return kOk;
}

int cmd_verify(const Flags& flags, const std::string& fault)
{
    const ExperimentConfig cfg = flags.resolve();
    VerifyOptions opts;
    opts.seed = cfg.seed;
    if (fault == "tighten-no-sqrt")
        opts.fault = Fault::TightenWithoutSqrt;
    else if (!fault.empty())
        throw ConfigError("unknown fault '" + fault + "'");
    const auto results = run_invariants(opts);
    print_report(std::cout, results);
    const bool ok = all_pass(results);
    std::cout << (ok ? "all invariants hold\n" : "invariant failures present\n");
    return ok ? kOk : kInvariant;
}

int cmd_bounds(const Flags& flags)
{
    const ExperimentConfig cfg = flags.resolve();
    if (cfg.L < 1 || cfg.cells < 1 || !(cfg.density > 0))
        throw ConfigError("length, cells and density must be positive");
    std::cout << io::bounds_json(static_cast<double>(cfg.cells) / cfg.L, cfg.density, cfg.noise_var()).dump(2) << '\n';
    return kOk;
}

int cmd_plot(const Flags& flags, const std::string& csv)
{
    const ExperimentConfig cfg = flags.resolve();
    const fs::path source = csv.empty() ? fs::path(cfg.out) / "results.csv" : fs::path(csv);
    fs::path dir = flags.opts[7]->count() ? fs::path(cfg.out) : source.parent_path();
    if (dir.empty())
        dir = ".";
    const auto files = plot_results(source, dir);
    std::cout << files.gain.string() << '\n' << files.sinr.string() << '\n';
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Pulse shaping for doubly dispersive channels"};
    app.require_subcommand(1);

    Flags run_flags, verify_flags, bounds_flags, plot_flags;
    auto* run = app.add_subcommand("run", "run the delay/Doppler ratio sweep and write results.csv");
    run_flags.attach(*run);
    auto* verify = app.add_subcommand("verify", "run the invariant suite");
    verify_flags.attach(*verify);
    std::string fault;
    verify->add_option("--inject-fault", fault, "negative control: tighten-no-sqrt")->group("");
    auto* bounds = app.add_subcommand("bounds", "print closed-form bounds for cells/length");
    bounds_flags.attach(*bounds);
    auto* plot = app.add_subcommand("plot", "render SVG charts from a results CSV");
    plot_flags.attach(*plot);
    std::string csv;
    plot->add_option("csv", csv, "results CSV (default <out>/results.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    try {
        if (*run)
            return cmd_run(run_flags);
        if (*verify)
            return cmd_verify(verify_flags, fault);
        if (*bounds)
            return cmd_bounds(bounds_flags);
        return cmd_plot(plot_flags, csv);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const PlotError& e) {
        std::cerr << "plot: " << e.what() << '\n';
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvariant;
    }
}
