#pragma once

// Host suspiciousness (PageRank over the host graph plus stage diversity),
// alert reliability, and path scores.

#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "maac/alert_graph.hpp"

namespace maac {

class EmptyGraph : public Error {
public:
    EmptyGraph() : Error("PageRank over an empty host graph") {}
};

class UnknownHost : public Error {
public:
    explicit UnknownHost(const IpAddress& ip) : Error("no score for host " + ip.str()) {}
};

struct PageRankOptions {
    double damping = 0.85;
    double epsilon = 1e-8;
    int max_iters = 100;
};

struct PageRankResult {
    std::vector<double> rank;  // indexed like HostGraph::hosts
    int iterations = 0;
    bool converged = false;
};

/// Power iteration on the weighted host multigraph. Parallel edges add their
/// weights; dangling hosts spread their mass uniformly. Stops once the L1
/// change between sweeps drops below epsilon, or after max_iters sweeps.
inline PageRankResult pagerank(const HostGraph& g, const PageRankOptions& opts = {}) {
    const std::size_t n = g.hosts.size();
    if (n == 0) throw EmptyGraph();
    if (!(opts.damping > 0.0 && opts.damping < 1.0)) throw Error("damping must be in (0, 1)");
    if (!(opts.epsilon > 0.0)) throw Error("epsilon must be positive");

    std::vector<double> out_weight(n, 0.0);
    for (const auto& e : g.edges) out_weight[e.from] += e.weight;

    const double inv_n = 1.0 / static_cast<double>(n);
    PageRankResult res;
    res.rank.assign(n, inv_n);
    std::vector<double> next(n);
    for (int it = 0; it < opts.max_iters; ++it) {
        double dangling = 0.0;
        for (std::size_t v = 0; v < n; ++v)
            if (out_weight[v] == 0.0) dangling += res.rank[v];
        const double base = (1.0 - opts.damping) * inv_n + opts.damping * dangling * inv_n;
        std::fill(next.begin(), next.end(), base);
        for (const auto& e : g.edges) next[e.to] += opts.damping * res.rank[e.from] * e.weight / out_weight[e.from];

        double total = 0.0;
        for (double x : next) total += x;
        double delta = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            next[v] /= total;
            delta += std::abs(next[v] - res.rank[v]);
        }
        res.rank.swap(next);
        res.iterations = it + 1;
        if (delta < opts.epsilon) {
            res.converged = true;
            break;
        }
    }
    return res;
}

struct SuspicionWeights {
    double pagerank = 1.0;
    double alert_types = 1.0;
};

struct HostScore {
    IpAddress host;
    double pagerank = 0.0;
    int alert_type_count = 0;
    double suspiciousness = 0.0;
};

inline double host_suspiciousness(double pagerank, int alert_type_count, const SuspicionWeights& w = {}) {
    return w.pagerank * pagerank + w.alert_types * static_cast<double>(alert_type_count);
}

using HostScoreTable = std::map<IpAddress, HostScore>;

/// Number of distinct stages among alerts targeting each host.
inline std::map<IpAddress, int> alert_type_counts(const std::vector<SuperAlert>& alerts) {
    std::map<IpAddress, std::array<bool, 4>> seen;
    for (const auto& a : alerts) seen[a.dst()][stage_index(a.stage)] = true;
    std::map<IpAddress, int> out;
    for (const auto& [host, flags] : seen) {
        int c = 0;
        for (bool f : flags) c += f ? 1 : 0;
        out[host] = c;
    }
    return out;
}

struct ScoringOptions {
    PageRankOptions pagerank;
    SuspicionWeights weights;
    EdgeWeightMode edge_weights = EdgeWeightMode::Unit;
};

inline HostScoreTable score_hosts(const std::vector<SuperAlert>& alerts, const ScoringOptions& opts = {}) {
    HostScoreTable table;
    if (alerts.empty()) return table;
    HostGraph hg = derive_host_graph(alerts, opts.edge_weights);
    auto pr = pagerank(hg, opts.pagerank);
    auto types = alert_type_counts(alerts);
    for (std::size_t i = 0; i < hg.hosts.size(); ++i) {
        HostScore s;
        s.host = hg.hosts[i];
        s.pagerank = pr.rank[i];
        auto it = types.find(s.host);
        s.alert_type_count = it == types.end() ? 0 : it->second;
        s.suspiciousness = host_suspiciousness(s.pagerank, s.alert_type_count, opts.weights);
        table.emplace(s.host, s);
    }
    return table;
}

inline double suspiciousness_of(const HostScoreTable& table, const IpAddress& ip) {
    auto it = table.find(ip);
    if (it == table.end()) throw UnknownHost(ip);
    return it->second.suspiciousness;
}

/// Source plus destination suspiciousness plus the stage base score. Host-based
/// alerts (no source) count only the host's own suspiciousness.
inline double alert_reliability(const SuperAlert& a, const HostScoreTable& table) {
    double hosts = a.src() ? suspiciousness_of(table, *a.src()) + suspiciousness_of(table, a.dst())
                           : suspiciousness_of(table, a.dst());
    return hosts + static_cast<double>(base_score(a.stage));
}

/// Sum of reliabilities, accumulated in path order.
inline double path_score(const std::vector<const SuperAlert*>& path, const HostScoreTable& table) {
    double total = 0.0;
    for (const SuperAlert* a : path) total += alert_reliability(*a, table);
    return total;
}

inline double path_score(const AlertGraph& g, const std::vector<std::size_t>& nodes, const HostScoreTable& table) {
    double total = 0.0;
    for (auto id : nodes) total += alert_reliability(g.nodes().at(id), table);
    return total;
}

}  // namespace maac
