// maac: correlate IDS/EDR alerts into ranked multi-step attack paths.

#include <CLI11.hpp>

#include <iostream>

#include "maac/app.hpp"

int main(int argc, char** argv) {
    maac::AppOptions opts;
    std::uint64_t seed = 0;

    CLI::App app{"Correlate IDS/EDR alerts into ranked multi-step attack paths"};
    app.add_option("--input", opts.inputs, "Alert file (repeatable; ids continue across files)");
    app.add_option("--format", opts.format, "Input format: fast or records")->capture_default_str();
    app.add_option("--config", opts.config_file, "key=value configuration file");
    app.add_option("--truth", opts.truth_file, "Ground-truth paths; adds a metrics section to the report");
    app.add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
    app.add_option("--top-k", opts.top_k, "Paths counted by the metrics and the summary")->capture_default_str();
    app.add_flag("--emit-dot", opts.emit_dot, "Also write the correlation graph as graph.dot");
    auto* gen = app.add_option("--gen-scenario", seed,
                               "Write a synthetic scenario (scenario.alerts, scenario.truth) for this seed; "
                               "analyzed directly when no --input is given");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? maac::kExitOk : maac::kExitConfig;
    }
    if (gen->count() > 0) opts.gen_scenario_seed = seed;
    return maac::run_app_guarded(opts, std::cout, std::cerr);
}
