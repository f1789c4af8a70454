#pragma once

// Alert correlation graph over super-alerts: chronological chains per source
// address, plus cross-host edges anchored on GetAccessPrivilege alerts.

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "maac/reduction.hpp"

namespace maac {

enum class EdgeKind { IntraSource, CrossHost };

struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
    EdgeKind kind = EdgeKind::IntraSource;

    friend bool operator==(const Edge&, const Edge&) = default;
};

inline bool edge_less(const Edge& a, const Edge& b) noexcept {
    return std::pair(a.from, a.to) < std::pair(b.from, b.to);
}

/// Immutable once built. Node i is the super-alert with id i.
class AlertGraph {
public:
    AlertGraph() = default;

    AlertGraph(std::vector<SuperAlert> nodes, std::vector<Edge> edges)
        : nodes_(std::move(nodes)), out_(nodes_.size()), in_(nodes_.size()) {
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            if (nodes_[i].id != i) throw Error("alert graph node ids must equal their positions");
        std::sort(edges.begin(), edges.end(), edge_less);
        for (const auto& e : edges) {
            if (e.from >= nodes_.size() || e.to >= nodes_.size()) throw Error("edge endpoint out of range");
            if (e.from == e.to) continue;
            if (!edges_.empty() && edges_.back().from == e.from && edges_.back().to == e.to) continue;
            edges_.push_back(e);
            out_[e.from].push_back(e.to);
            in_[e.to].push_back(e.from);
        }
    }

    const std::vector<SuperAlert>& nodes() const noexcept { return nodes_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    const std::vector<std::size_t>& successors(std::size_t v) const { return out_.at(v); }
    const std::vector<std::size_t>& predecessors(std::size_t v) const { return in_.at(v); }

    bool has_edge(std::size_t from, std::size_t to) const {
        const auto& s = out_.at(from);
        return std::binary_search(s.begin(), s.end(), to);
    }

    std::size_t count(EdgeKind kind) const {
        return static_cast<std::size_t>(
            std::count_if(edges_.begin(), edges_.end(), [kind](const Edge& e) { return e.kind == kind; }));
    }

private:
    std::vector<SuperAlert> nodes_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
};

namespace detail {

inline bool start_less(const SuperAlert& a, const SuperAlert& b) noexcept {
    return chronological_less(a.representative, b.representative);
}

}  // namespace detail

/// Links the super-alerts of each source address in chronological order.
/// Host-based alerts (no source) are not chained.
inline std::vector<Edge> chain_intra_source(const std::vector<SuperAlert>& alerts) {
    std::map<IpAddress, std::vector<const SuperAlert*>> by_src;
    for (const auto& a : alerts)
        if (a.src()) by_src[*a.src()].push_back(&a);
    std::vector<Edge> edges;
    for (auto& [src, chain] : by_src) {
        std::sort(chain.begin(), chain.end(),
                  [](const SuperAlert* a, const SuperAlert* b) { return detail::start_less(*a, *b); });
        for (std::size_t i = 1; i < chain.size(); ++i)
            edges.push_back({chain[i - 1]->id, chain[i]->id, EdgeKind::IntraSource});
    }
    std::sort(edges.begin(), edges.end(), edge_less);
    return edges;
}

/// For every GetAccessPrivilege alert on host H, adds one edge per other
/// destination host to the earliest alert sourced from H that starts strictly
/// after the anchor.
inline std::vector<Edge> link_cross_host(const std::vector<SuperAlert>& alerts) {
    std::map<IpAddress, std::vector<const SuperAlert*>> by_src;
    for (const auto& a : alerts)
        if (a.src()) by_src[*a.src()].push_back(&a);
    for (auto& [src, list] : by_src)
        std::sort(list.begin(), list.end(),
                  [](const SuperAlert* a, const SuperAlert* b) { return detail::start_less(*a, *b); });

    std::vector<Edge> edges;
    for (const auto& anchor : alerts) {
        if (anchor.stage != AttackStage::GetAccessPrivilege) continue;
        auto it = by_src.find(anchor.dst());
        if (it == by_src.end()) continue;
        std::set<IpAddress> linked;
        // Chronological scan: the first hit per destination host is the closest in time.
        for (const SuperAlert* cand : it->second) {
            if (cand->start_time <= anchor.start_time) continue;
            if (cand->dst() == anchor.dst()) continue;
            if (linked.insert(cand->dst()).second) edges.push_back({anchor.id, cand->id, EdgeKind::CrossHost});
        }
    }
    std::sort(edges.begin(), edges.end(), edge_less);
    return edges;
}

/// Orders the alerts chronologically (ties by representative id), renumbers
/// them, and links both edge kinds.
inline AlertGraph build_graph(std::vector<SuperAlert> alerts) {
    std::sort(alerts.begin(), alerts.end(), detail::start_less);
    for (std::size_t i = 0; i < alerts.size(); ++i) alerts[i].id = i;
    auto edges = chain_intra_source(alerts);
    auto cross = link_cross_host(alerts);
    edges.insert(edges.end(), cross.begin(), cross.end());
    return AlertGraph(std::move(alerts), std::move(edges));
}

enum class EdgeWeightMode { Unit, RepeatCount };

/// Host-level multigraph: one weighted edge src->dst per super-alert with a source.
struct HostGraph {
    struct HostEdge {
        std::size_t from;
        std::size_t to;
        double weight;
    };

    std::vector<IpAddress> hosts;  // sorted
    std::vector<HostEdge> edges;

    std::size_t index_of(const IpAddress& ip) const {
        auto it = std::lower_bound(hosts.begin(), hosts.end(), ip);
        if (it == hosts.end() || *it != ip) throw Error("host not in host graph: " + ip.str());
        return static_cast<std::size_t>(it - hosts.begin());
    }

    std::size_t in_degree(std::size_t v) const {
        return static_cast<std::size_t>(
            std::count_if(edges.begin(), edges.end(), [v](const HostEdge& e) { return e.to == v; }));
    }
};

inline HostGraph derive_host_graph(const std::vector<SuperAlert>& alerts, EdgeWeightMode mode = EdgeWeightMode::Unit) {
    HostGraph g;
    std::set<IpAddress> hosts;
    for (const auto& a : alerts) {
        hosts.insert(a.dst());
        if (a.src()) hosts.insert(*a.src());
    }
    g.hosts.assign(hosts.begin(), hosts.end());
    for (const auto& a : alerts) {
        if (!a.src()) continue;
        double w = mode == EdgeWeightMode::RepeatCount ? static_cast<double>(a.repeat_count) : 1.0;
        g.edges.push_back({g.index_of(*a.src()), g.index_of(a.dst()), w});
    }
    return g;
}

inline HostGraph derive_host_graph(const AlertGraph& g, EdgeWeightMode mode = EdgeWeightMode::Unit) {
    return derive_host_graph(g.nodes(), mode);
}

namespace detail {

inline std::string dot_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out.push_back(c);
    }
    return out;
}

}  // namespace detail

/// Graphviz export. Nodes in id order, edges in (from, to) order.
inline void write_dot(std::ostream& os, const AlertGraph& g) {
    os << "digraph alert_graph {\n";
    os << "  node [shape=box, fontname=\"Helvetica\"];\n";
    for (const auto& n : g.nodes()) {
        os << "  n" << n.id << " [label=\"" << detail::dot_escape(n.representative.msg) << "\\n"
           << stage_name(n.stage) << "\\n\xC3\x97" << n.repeat_count << "\"];\n";
    }
    for (const auto& e : g.edges()) {
        os << "  n" << e.from << " -> n" << e.to;
        if (e.kind == EdgeKind::CrossHost) os << " [style=bold]";
        os << ";\n";
    }
    os << "}\n";
}

}  // namespace maac
