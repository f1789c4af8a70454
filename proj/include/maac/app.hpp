#pragma once

// Command-line driver logic, independent of argument parsing so it can be
// exercised in-process.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "maac/config.hpp"
#include "maac/metrics.hpp"
#include "maac/parse.hpp"
#include "maac/pipeline.hpp"
#include "maac/scenario.hpp"

namespace maac {

struct AppOptions {
    std::vector<std::string> inputs;
    std::string format = "records";
    std::optional<std::string> config_file;
    std::optional<std::string> truth_file;
    std::string out_dir = "out";
    std::size_t top_k = 3;
    bool emit_dot = false;
    std::optional<std::uint64_t> gen_scenario_seed;
};

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitConfig = 2,
    kExitIo = 3,
    kExitPathExplosion = 4,
};

struct AppOutcome {
    PipelineResult result;
    std::filesystem::path report_path;
    std::optional<std::filesystem::path> dot_path;
};

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << contents;
    if (!out.flush()) throw IoError("failed writing " + path.string());
}

inline ScenarioGroundTruth load_truth(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open truth file " + path);
    try {
        return parse_truth(in);
    } catch (const Error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

}  // namespace detail

inline AppOutcome run_app(AppOptions opts, std::ostream& log) {
    namespace fs = std::filesystem;

    PipelineConfig cfg = opts.config_file ? load_config(*opts.config_file) : PipelineConfig{};
    if (opts.top_k < 1) throw ConfigError("--top-k must be at least 1");

    InputFormat format;
    try {
        format = parse_input_format(opts.format);
    } catch (const UnsupportedFormat& e) {
        throw ConfigError(e.what());
    }

    std::error_code ec;
    fs::create_directories(opts.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + opts.out_dir + ": " + ec.message());
    const fs::path out_dir(opts.out_dir);

    if (opts.gen_scenario_seed) {
        cfg.seed = *opts.gen_scenario_seed;
        Scenario sc = generate_scenario(cfg.seed, cfg.profile);
        std::string alerts;
        for (const auto& line : sc.record_lines()) alerts += line + "\n";
        std::ostringstream truth;
        write_truth(truth, sc.truth);
        detail::write_file(out_dir / "scenario.alerts", alerts);
        detail::write_file(out_dir / "scenario.truth", truth.str());
        log << "generated " << sc.alerts.size() << " alerts (seed " << cfg.seed << ") in " << out_dir.string() << "\n";
        if (opts.inputs.empty()) {
            opts.inputs.push_back((out_dir / "scenario.alerts").string());
            format = InputFormat::Records;
            if (!opts.truth_file) opts.truth_file = (out_dir / "scenario.truth").string();
        }
    }
    if (opts.inputs.empty()) throw ConfigError("no input files given (use --input or --gen-scenario)");

    std::vector<RawAlert> alerts;
    std::vector<SourcedDiagnostic> diagnostics;
    IngestOptions ingest_opts;
    ingest_opts.fast.base_year = cfg.base_year;
    ingest_opts.fast.sensor = cfg.fast_sensor;
    for (const auto& path : opts.inputs) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open input " + path);
        ingest_opts.first_id = alerts.size() + 1;
        IngestResult r = ingest(in, format, ingest_opts);
        if (in.bad()) throw IoError("failed reading " + path);
        for (auto& a : r.alerts) alerts.push_back(std::move(a));
        for (auto& d : r.diagnostics) diagnostics.push_back({path, std::move(d)});
    }

    std::optional<ScenarioGroundTruth> truth;
    if (opts.truth_file) truth = detail::load_truth(*opts.truth_file);

    AppOutcome outcome;
    try {
        outcome.result = run_pipeline(alerts, cfg);
    } catch (const PathExplosion& e) {
        log << "path enumeration aborted: " << e.what() << " (raise path_cap or min_nodes)\n";
        throw;
    }
    outcome.result.diagnostics = std::move(diagnostics);

    std::ostringstream report;
    write_report(report, outcome.result, opts.top_k, truth ? &*truth : nullptr);
    outcome.report_path = out_dir / "report.txt";
    detail::write_file(outcome.report_path, report.str());

    if (opts.emit_dot) {
        std::ostringstream dot;
        write_report_dot(dot, outcome.result);
        outcome.dot_path = out_dir / "graph.dot";
        detail::write_file(*outcome.dot_path, dot.str());
    }

    const auto& r = outcome.result;
    log << r.raw_alerts << " alerts -> " << r.graph.size() << " super-alerts, " << r.ranked.size()
        << " candidate paths";
    if (!r.diagnostics.empty()) log << ", " << r.diagnostics.size() << " malformed lines skipped";
    log << "\nreport: " << outcome.report_path.string() << "\n";
    if (outcome.dot_path) log << "graph:  " << outcome.dot_path->string() << "\n";
    return outcome;
}

/// Runs the driver and maps failures to exit codes, printing the reason.
inline int run_app_guarded(const AppOptions& opts, std::ostream& log, std::ostream& err) {
    try {
        run_app(opts, log);
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "maac: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        err << "maac: " << e.what() << "\n";
        return kExitIo;
    } catch (const PathExplosion& e) {
        err << "maac: " << e.what() << "\n";
        return kExitPathExplosion;
    } catch (const std::exception& e) {
        err << "maac: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace maac
