#pragma once

// Test helpers and independent reference implementations ("oracles") used by
// both the unit tests and the acceptance driver. The oracles deliberately take
// a different route from the library code.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "maac/maac.hpp"

namespace maac::testing {

inline Timestamp at_seconds(double s) {
    return Timestamp{} + std::chrono::sys_days{std::chrono::year{2000} / 3 / 7}.time_since_epoch() +
           Duration{static_cast<Duration::rep>(std::llround(s * 1e6))};
}

inline RawAlert make_alert(std::uint64_t id, double t, std::string msg, std::optional<std::string> src,
                           std::string dst) {
    RawAlert a;
    a.id = id;
    a.timestamp = at_seconds(t);
    a.msg = std::move(msg);
    if (src) a.src_ip = IpAddress::from(*src);
    a.dst_ip = IpAddress::from(dst);
    a.proto = "TCP";
    a.sensor = "test";
    return a;
}

/// A super-alert built by hand (repeat 1, stage set explicitly).
inline SuperAlert make_super(std::uint64_t id, double t, AttackStage stage, std::optional<std::string> src,
                             std::string dst, std::string msg = "m") {
    SuperAlert s;
    s.representative = make_alert(id, t, std::move(msg), std::move(src), std::move(dst));
    s.repeat_count = 1;
    s.member_ids = {id};
    s.stage = stage;
    s.start_time = s.end_time = s.representative.timestamp;
    return s;
}

// ---- embedding oracle: exact bag-of-tokens cosine, no hashing ------------

inline std::map<std::string, double> token_bag(std::string_view msg) {
    // Words are split and lowercased independently of the library tokenizer.
    std::vector<std::string> words;
    std::string cur;
    for (unsigned char c : msg) {
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
            cur += static_cast<char>(c);
        } else if (c >= 'A' && c <= 'Z') {
            cur += static_cast<char>(c - 'A' + 'a');
        } else if (!cur.empty()) {
            words.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) words.push_back(cur);
    std::map<std::string, double> bag;
    for (const auto& w : words) {
        bag["w:" + w] += 1.0;
        for (std::size_t i = 0; i + 3 <= w.size(); ++i) bag["t:" + w.substr(i, 3)] += 1.0;
    }
    return bag;
}

inline double bag_cosine(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (const auto& [k, v] : a) {
        na += v * v;
        auto it = b.find(k);
        if (it != b.end()) dot += v * it->second;
    }
    for (const auto& [k, v] : b) nb += v * v;
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / std::sqrt(na * nb);
}

inline double oracle_similarity(std::string_view a, std::string_view b) { return bag_cosine(token_bag(a), token_bag(b)); }

// ---- PageRank oracle: solve (I - d M) x = (1 - d)/N 1 directly ------------

inline std::vector<double> pagerank_oracle(const HostGraph& g, double d) {
    const std::size_t n = g.hosts.size();
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));  // m[to][from]
    std::vector<double> out(n, 0.0);
    for (const auto& e : g.edges) out[e.from] += e.weight;
    for (const auto& e : g.edges) m[e.to][e.from] += e.weight / out[e.from];
    for (std::size_t j = 0; j < n; ++j)
        if (out[j] == 0.0)
            for (std::size_t i = 0; i < n; ++i) m[i][j] = 1.0 / static_cast<double>(n);

    // Augmented system, Gaussian elimination with partial pivoting.
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = (i == j ? 1.0 : 0.0) - d * m[i][j];
        a[i][n] = (1.0 - d) / static_cast<double>(n);
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        std::swap(a[c], a[p]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
    return x;
}

// ---- path oracle: every simple path, then keep the maximal ones ----------

inline std::set<std::vector<std::size_t>> maximal_paths_oracle(std::size_t n,
                                                              const std::set<std::pair<std::size_t, std::size_t>>& edges,
                                                              std::size_t min_nodes) {
    std::set<std::vector<std::size_t>> all;
    std::vector<std::size_t> path;
    auto grow = [&](auto&& self) -> void {
        all.insert(path);
        for (std::size_t w = 0; w < n; ++w) {
            if (!edges.count({path.back(), w})) continue;
            if (std::find(path.begin(), path.end(), w) != path.end()) continue;
            path.push_back(w);
            self(self);
            path.pop_back();
        }
    };
    for (std::size_t s = 0; s < n; ++s) {
        path = {s};
        grow(grow);
    }
    std::set<std::vector<std::size_t>> out;
    for (const auto& p : all) {
        auto on = [&](std::size_t v) { return std::find(p.begin(), p.end(), v) != p.end(); };
        bool maximal = true;
        for (std::size_t v = 0; v < n && maximal; ++v) {
            if (on(v)) continue;
            if (edges.count({v, p.front()}) || edges.count({p.back(), v})) maximal = false;
        }
        if (maximal && p.size() >= min_nodes) out.insert(p);
    }
    return out;
}

/// Graph with placeholder nodes and the given edges (all intra-source).
inline AlertGraph bare_graph(std::size_t n, const std::set<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<SuperAlert> nodes;
    for (std::size_t i = 0; i < n; ++i) {
        auto s = make_super(i + 1, static_cast<double>(i), AttackStage::Scan, "10.0.0.1", "10.0.0.2");
        s.id = i;
        nodes.push_back(std::move(s));
    }
    std::vector<Edge> es;
    for (auto [a, b] : edges) es.push_back({a, b, EdgeKind::IntraSource});
    return AlertGraph(std::move(nodes), std::move(es));
}

// ---- fuzzed corpora ------------------------------------------------------

inline const std::vector<std::string>& fuzz_vocabulary() {
    static const std::vector<std::string> words = {
        "ICMP", "PING", "RPC", "sadmind", "query", "root", "credentials", "attempt", "UDP", "RSERVICES", "rsh",
        "SSH", "login", "shell", "DDOS", "mstream", "handler", "agent", "data", "transfer", "SCAN", "nmap",
        "WEB-MISC", "SQL", "injection", "overflow", "exploit", "probe", "version", "TFTP", "GET", "EDR",
        "privilege", "escalation", "file", "cross", "site", "scripting", "beacon", "x86"};
    return words;
}

inline std::string fuzz_msg(std::mt19937_64& rng) {
    const auto& v = fuzz_vocabulary();
    std::size_t len = 1 + rng() % 5;
    std::string m;
    for (std::size_t i = 0; i < len; ++i) m += (i ? " " : "") + v[rng() % v.size()];
    return m;
}

/// Random alerts over a small host and msg pool so that storms, repeats and
/// cross-host anchors all occur. Ids are 1..n but emitted in shuffled order.
inline std::vector<RawAlert> fuzz_corpus(std::mt19937_64& rng) {
    std::size_t hosts = 2 + rng() % 6;
    std::size_t n = rng() % 80;
    std::vector<std::string> msgs;
    for (std::size_t i = 0, k = 1 + rng() % 8; i < k; ++i) msgs.push_back(fuzz_msg(rng));
    std::vector<RawAlert> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::string dst = "10.0.0." + std::to_string(1 + rng() % hosts);
        std::optional<std::string> src;
        if (rng() % 6 != 0) src = "10.0.0." + std::to_string(1 + rng() % hosts);
        double t = static_cast<double>(rng() % 900) + (rng() % 4 == 0 ? 0.0 : static_cast<double>(rng() % 1000) / 1000.0);
        std::string msg = rng() % 5 == 0 ? fuzz_msg(rng) : msgs[rng() % msgs.size()];
        out.push_back(make_alert(i + 1, t, std::move(msg), src, dst));
    }
    std::shuffle(out.begin(), out.end(), rng);
    return out;
}

}  // namespace maac::testing
