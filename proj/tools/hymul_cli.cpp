// Experiment driver. Reads a JSON config describing a multiplication plan
// family, input sizes, machine and parallel grids, and analysis toggles;
// runs every grid point deterministically and writes per-analysis CSVs plus
// a summary into the output directory. Exit status: 0 when all dominance
// and lemma checks hold, 1 when any fails, 2 on configuration errors.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hymul/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"hybrid multiplication I/O experiments"};

    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string analyses;

    app.add_option("--config", config_path, "JSON experiment config")->required();
    app.add_option("--out", out_dir, "output directory for CSV files");
    app.add_option("--seed", seed, "override the config's master seed")
        ->each([&](const std::string&) { seed_given = true; });
    app.add_option("--analyses", analyses,
                   "comma-separated override: simulate,bounds,lemmas,census");

    CLI11_PARSE(app, argc, argv);

    try {
        hymul::ExperimentConfig cfg = hymul::experiment_config_from_file(config_path);
        if (seed_given) cfg.seed = seed;
        if (!analyses.empty()) {
            cfg.analyze_simulate = cfg.analyze_bounds = false;
            cfg.analyze_lemmas = cfg.analyze_census = false;
            std::size_t start = 0;
            while (start <= analyses.size()) {
                std::size_t comma = analyses.find(',', start);
                std::string name = analyses.substr(
                    start, comma == std::string::npos ? std::string::npos : comma - start);
                if (name == "simulate")
                    cfg.analyze_simulate = true;
                else if (name == "bounds")
                    cfg.analyze_bounds = true;
                else if (name == "lemmas")
                    cfg.analyze_lemmas = true;
                else if (name == "census")
                    cfg.analyze_census = true;
                else if (!name.empty())
                    throw hymul::ConfigError("--analyses: unknown analysis '" + name + "'");
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
            cfg.validate();
        }

        hymul::ExperimentSummary summary = hymul::run_experiment(cfg, out_dir);
        std::fputs(summary.to_text().c_str(), stdout);
        return summary.ok() ? 0 : 1;
    } catch (const hymul::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
