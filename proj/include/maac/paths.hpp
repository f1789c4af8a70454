#pragma once

// Maximal simple paths in the alert graph and their ranking.

#include <algorithm>
#include <vector>

#include "maac/alert_graph.hpp"
#include "maac/scoring.hpp"

namespace maac {

class PathExplosion : public Error {
public:
    explicit PathExplosion(std::size_t cap)
        : Error("path enumeration exceeded the cap of " + std::to_string(cap) + " candidate paths") {}
};

struct AttackPath {
    std::vector<std::size_t> nodes;  // super-alert ids, in traversal order
    double score = 0.0;

    std::size_t length() const noexcept { return nodes.size(); }
};

struct PathOptions {
    std::size_t min_nodes = 3;
    std::size_t cap = 10000;
};

namespace detail {

class MaximalPathSearch {
public:
    MaximalPathSearch(const AlertGraph& g, const PathOptions& opts)
        : g_(g), opts_(opts), on_path_(g.size(), 0) {}

    std::vector<AttackPath> run() {
        for (std::size_t s = 0; s < g_.size(); ++s) {
            if (!can_be_left_maximal(s)) continue;
            path_.assign(1, s);
            on_path_[s] = 1;
            extend();
            on_path_[s] = 0;
        }
        std::sort(found_.begin(), found_.end(),
                  [](const AttackPath& a, const AttackPath& b) { return a.nodes < b.nodes; });
        return std::move(found_);
    }

private:
    // A path starting at s is left-maximal only if every predecessor of s lies
    // on it, so every predecessor must be reachable from s.
    bool can_be_left_maximal(std::size_t s) const {
        const auto& preds = g_.predecessors(s);
        if (preds.empty()) return true;
        std::vector<char> seen(g_.size(), 0);
        std::vector<std::size_t> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto w : g_.successors(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        return std::all_of(preds.begin(), preds.end(), [&](std::size_t p) { return seen[p] != 0; });
    }

    void extend() {
        bool extended = false;
        for (auto w : g_.successors(path_.back())) {
            if (on_path_[w]) continue;
            extended = true;
            path_.push_back(w);
            on_path_[w] = 1;
            extend();
            on_path_[w] = 0;
            path_.pop_back();
        }
        if (extended) return;
        if (++leaves_ > opts_.cap) throw PathExplosion(opts_.cap);
        const auto& preds = g_.predecessors(path_.front());
        bool left_maximal = std::all_of(preds.begin(), preds.end(), [&](std::size_t p) { return on_path_[p] != 0; });
        if (left_maximal && path_.size() >= opts_.min_nodes) found_.push_back({path_, 0.0});
    }

    const AlertGraph& g_;
    PathOptions opts_;
    std::vector<char> on_path_;
    std::vector<std::size_t> path_;
    std::vector<AttackPath> found_;
    std::size_t leaves_ = 0;
};

}  // namespace detail

/// All maximal simple paths (no extension possible at either end) with at
/// least min_nodes nodes, in lexicographic order of node ids. Throws
/// PathExplosion once more than opts.cap candidate paths have been examined.
inline std::vector<AttackPath> enumerate_paths(const AlertGraph& g, const PathOptions& opts = {}) {
    if (opts.min_nodes < 1) throw Error("min_nodes must be at least 1");
    return detail::MaximalPathSearch(g, opts).run();
}

inline bool path_rank_less(const AttackPath& a, const AttackPath& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.length() != b.length()) return a.length() > b.length();
    return a.nodes < b.nodes;
}

/// Scores every path and orders them: score descending, then longer first,
/// then lexicographic node ids.
inline std::vector<AttackPath> rank_paths(std::vector<AttackPath> paths, const AlertGraph& g,
                                          const HostScoreTable& scores) {
    for (auto& p : paths) p.score = path_score(g, p.nodes, scores);
    std::sort(paths.begin(), paths.end(), path_rank_less);
    return paths;
}

}  // namespace maac
