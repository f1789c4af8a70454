#pragma once

// Detection metrics against labeled attack paths.
//
// A reported path is read as a sequence of steps (host, stage). Scan, Exploit
// and GetAccessPrivilege steps happen on the targeted host (destination);
// PostAttack steps happen on the host that acts (source, or the destination
// for host-based alerts). A reported path matches a true path when the true
// path's steps occur in it as an ordered subsequence.

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "maac/parse.hpp"
#include "maac/paths.hpp"

namespace maac {

class EmptyTruth : public Error {
public:
    EmptyTruth() : Error("ground truth contains no attack paths") {}
};

struct PathStep {
    IpAddress host;
    AttackStage stage = AttackStage::Scan;

    friend bool operator==(const PathStep&, const PathStep&) = default;
};

struct TruePath {
    std::vector<PathStep> steps;

    friend bool operator==(const TruePath&, const TruePath&) = default;
};

struct AlertLabel {
    bool attack_related = false;
    int step = -1;  // index into the matching true path's steps, -1 for noise
};

struct ScenarioGroundTruth {
    std::vector<TruePath> true_paths;
    std::map<std::uint64_t, AlertLabel> alert_labels;
};

inline PathStep step_of(const SuperAlert& a) {
    if (a.stage == AttackStage::PostAttack && a.src()) return {*a.src(), a.stage};
    return {a.dst(), a.stage};
}

inline bool path_matches(const AlertGraph& g, const AttackPath& reported, const TruePath& truth) {
    std::size_t j = 0;
    for (auto id : reported.nodes) {
        if (j == truth.steps.size()) break;
        if (step_of(g.nodes().at(id)) == truth.steps[j]) ++j;
    }
    return j == truth.steps.size();
}

inline bool path_is_correct(const AlertGraph& g, const AttackPath& reported, const ScenarioGroundTruth& truth) {
    for (const auto& t : truth.true_paths)
        if (path_matches(g, reported, t)) return true;
    return false;
}

/// Fraction of true paths matched by at least one reported path.
inline double detect_rate(const AlertGraph& g, const std::vector<AttackPath>& reported,
                          const ScenarioGroundTruth& truth) {
    if (truth.true_paths.empty()) throw EmptyTruth();
    std::size_t hit = 0;
    for (const auto& t : truth.true_paths) {
        for (const auto& p : reported)
            if (path_matches(g, p, t)) {
                ++hit;
                break;
            }
    }
    return static_cast<double>(hit) / static_cast<double>(truth.true_paths.size());
}

inline std::size_t count_wrong(const AlertGraph& g, const std::vector<AttackPath>& reported,
                               const ScenarioGroundTruth& truth) {
    std::size_t wrong = 0;
    for (const auto& p : reported) wrong += path_is_correct(g, p, truth) ? 0 : 1;
    return wrong;
}

/// 1 - correct/reported over the given (top-k) paths; 0 when nothing is reported.
inline double false_path_rate(const AlertGraph& g, const std::vector<AttackPath>& reported_top_k,
                              const ScenarioGroundTruth& truth) {
    if (reported_top_k.empty()) return 0.0;
    return static_cast<double>(count_wrong(g, reported_top_k, truth)) /
           static_cast<double>(reported_top_k.size());
}

/// Wrong paths among the top-k divided by the number of all candidate paths.
inline double false_path_rate_over_candidates(const AlertGraph& g, const std::vector<AttackPath>& reported_top_k,
                                              const ScenarioGroundTruth& truth, std::size_t candidates) {
    if (candidates == 0) return 0.0;
    return static_cast<double>(count_wrong(g, reported_top_k, truth)) / static_cast<double>(candidates);
}

inline std::vector<AttackPath> top_k(const std::vector<AttackPath>& ranked, std::size_t k) {
    return {ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(std::min(k, ranked.size()))};
}

// Ground-truth file: one `path=<host,host,...> stages=<stage,stage,...>` per line.

inline void write_truth(std::ostream& os, const ScenarioGroundTruth& truth) {
    for (const auto& t : truth.true_paths) {
        os << "path=";
        for (std::size_t i = 0; i < t.steps.size(); ++i) os << (i ? "," : "") << t.steps[i].host.str();
        os << " stages=";
        for (std::size_t i = 0; i < t.steps.size(); ++i) os << (i ? "," : "") << stage_name(t.steps[i].stage);
        os << "\n";
    }
}

inline ScenarioGroundTruth parse_truth(std::istream& in) {
    auto split = [](std::string_view s) {
        std::vector<std::string> out;
        std::size_t pos = 0;
        while (true) {
            auto c = s.find(',', pos);
            out.emplace_back(s.substr(pos, c == std::string_view::npos ? std::string_view::npos : c - pos));
            if (c == std::string_view::npos) break;
            pos = c + 1;
        }
        return out;
    };

    ScenarioGroundTruth truth;
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        std::string_view l = detail::trim(line);
        if (l.empty() || l.front() == '#') continue;
        auto fail = [&](const std::string& why) {
            return Error("truth line " + std::to_string(lineno) + ": " + why);
        };
        auto sp = l.find(' ');
        if (!l.starts_with("path=") || sp == std::string_view::npos) throw fail("expected 'path=... stages=...'");
        std::string_view rest = detail::trim(l.substr(sp + 1));
        if (!rest.starts_with("stages=")) throw fail("expected 'stages='");
        auto hosts = split(l.substr(5, sp - 5));
        auto stages = split(rest.substr(7));
        if (hosts.size() != stages.size()) throw fail("host and stage counts differ");
        if (hosts.size() < 3) throw fail("a true path needs at least 3 steps");
        TruePath t;
        for (std::size_t i = 0; i < hosts.size(); ++i) {
            auto ip = IpAddress::parse(hosts[i]);
            auto st = parse_stage(stages[i]);
            if (!ip) throw fail("bad host '" + hosts[i] + "'");
            if (!st) throw fail("bad stage '" + stages[i] + "'");
            t.steps.push_back({*ip, *st});
        }
        truth.true_paths.push_back(std::move(t));
    }
    return truth;
}

}  // namespace maac
