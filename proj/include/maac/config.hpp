#pragma once

// Flat key=value pipeline configuration. Unknown keys are errors so typos do
// not silently fall back to defaults.

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <string>

#include "maac/alert_graph.hpp"
#include "maac/parse.hpp"
#include "maac/paths.hpp"
#include "maac/reduction.hpp"
#include "maac/scenario.hpp"
#include "maac/scoring.hpp"

namespace maac {

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& why) : Error("config error: " + why) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& why) : Error("I/O error: " + why) {}
};

struct PipelineConfig {
    ReductionOptions reduction;
    std::size_t dimension = HashingEmbedder::kDefaultDimension;
    ScoringOptions scoring;
    PathOptions paths;
    int base_year = 2000;
    std::string fast_sensor = "snort";
    std::optional<std::string> rules_file;

    std::uint64_t seed = 1;
    ScenarioProfile profile;
};

namespace detail {

inline double config_double(std::string_view key, std::string_view v) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError("'" + std::string(key) + "' expects a number, got '" + std::string(v) + "'");
    return out;
}

inline long long config_int(std::string_view key, std::string_view v) {
    long long out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError("'" + std::string(key) + "' expects an integer, got '" + std::string(v) + "'");
    return out;
}

}  // namespace detail

inline void apply_config_value(PipelineConfig& c, std::string_view key, std::string_view value) {
    using detail::config_double;
    using detail::config_int;
    if (key == "threshold") {
        c.reduction.threshold = config_double(key, value);
        if (!(c.reduction.threshold > 0.0 && c.reduction.threshold <= 1.0)) throw ConfigError("threshold must be in (0, 1]");
    } else if (key == "window") {
        double secs = config_double(key, value);
        if (!(secs > 0.0)) throw ConfigError("window must be positive");
        c.reduction.window = Duration{static_cast<Duration::rep>(secs * 1e6)};
    } else if (key == "dimension") {
        auto d = config_int(key, value);
        if (d < 1) throw ConfigError("dimension must be positive");
        c.dimension = static_cast<std::size_t>(d);
    } else if (key == "damping") {
        c.scoring.pagerank.damping = config_double(key, value);
        if (!(c.scoring.pagerank.damping > 0.0 && c.scoring.pagerank.damping < 1.0)) throw ConfigError("damping must be in (0, 1)");
    } else if (key == "epsilon") {
        c.scoring.pagerank.epsilon = config_double(key, value);
        if (!(c.scoring.pagerank.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    } else if (key == "max_iters") {
        auto n = config_int(key, value);
        if (n < 1) throw ConfigError("max_iters must be positive");
        c.scoring.pagerank.max_iters = static_cast<int>(n);
    } else if (key == "weight_pagerank") {
        c.scoring.weights.pagerank = config_double(key, value);
    } else if (key == "weight_alert_types") {
        c.scoring.weights.alert_types = config_double(key, value);
    } else if (key == "edge_weights") {
        if (value == "unit") c.scoring.edge_weights = EdgeWeightMode::Unit;
        else if (value == "repeat") c.scoring.edge_weights = EdgeWeightMode::RepeatCount;
        else throw ConfigError("edge_weights must be unit or repeat");
    } else if (key == "min_nodes") {
        auto n = config_int(key, value);
        if (n < 1) throw ConfigError("min_nodes must be at least 1");
        c.paths.min_nodes = static_cast<std::size_t>(n);
    } else if (key == "path_cap") {
        auto n = config_int(key, value);
        if (n < 1) throw ConfigError("path_cap must be positive");
        c.paths.cap = static_cast<std::size_t>(n);
    } else if (key == "base_year") {
        c.base_year = static_cast<int>(config_int(key, value));
    } else if (key == "sensor") {
        c.fast_sensor = std::string(value);
    } else if (key == "rules") {
        c.rules_file = std::string(value);
    } else if (key == "seed") {
        auto n = config_int(key, value);
        if (n < 0) throw ConfigError("seed must be non-negative");
        c.seed = static_cast<std::uint64_t>(n);
    } else if (key == "hosts") {
        c.profile.hosts = static_cast<int>(config_int(key, value));
    } else if (key == "noise_rate") {
        c.profile.noise_rate = config_double(key, value);
    } else if (key == "storm_size") {
        c.profile.storm_size = static_cast<int>(config_int(key, value));
    } else {
        throw ConfigError("unknown key '" + std::string(key) + "'");
    }
}

inline PipelineConfig parse_config(std::istream& in) {
    PipelineConfig c;
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        std::string_view l = detail::trim(line);
        if (l.empty() || l.front() == '#') continue;
        auto eq = l.find('=');
        if (eq == std::string_view::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        apply_config_value(c, detail::trim(l.substr(0, eq)), detail::trim(l.substr(eq + 1)));
    }
    return c;
}

inline PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    return parse_config(in);
}

}  // namespace maac
