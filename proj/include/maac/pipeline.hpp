#pragma once

// End-to-end correlation: reduce -> classify -> graph -> score -> paths, and
// the line-oriented report writer.
//
// Report layout (one record per line, tab-separated key=value fields, fields
// always in the order shown):
//
//   # maac report v1
//   summary     raw_alerts  super_alerts  compression_rate  nodes  edges
//               intra_source_edges  cross_host_edges  maximal_paths
//               candidate_paths  min_nodes
//   diagnostic  source  line  reason
//   host        ip  pagerank  alert_types  suspiciousness        (sorted by ip)
//   alert       id  stage  repeat  sip  dip  start  end  msg      (sorted by id)
//   path        rank  score  length  nodes                        (ranked)
//   metrics     top_k  detect_rate  false_path_rate
//               false_path_rate_over_candidates  detect_rate_all_candidates
//
// followed by a human-readable section whose lines all start with "# ".
// Reals are printed in shortest round-trip form, so values parsed back from
// the report are bit-identical to the ones computed.

#include <charconv>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "maac/alert_graph.hpp"
#include "maac/config.hpp"
#include "maac/embedding.hpp"
#include "maac/metrics.hpp"
#include "maac/parse.hpp"
#include "maac/paths.hpp"
#include "maac/reduction.hpp"
#include "maac/scoring.hpp"
#include "maac/stage_classifier.hpp"

namespace maac {

struct SourcedDiagnostic {
    std::string source;
    Diagnostic diagnostic;
};

struct PipelineResult {
    std::size_t raw_alerts = 0;
    std::vector<SourcedDiagnostic> diagnostics;
    AlertGraph graph;
    HostScoreTable hosts;
    std::size_t maximal_paths = 0;    // maximal paths of any length
    std::vector<AttackPath> ranked;   // maximal paths with >= min_nodes nodes, ranked
    std::size_t min_nodes = 3;
};

inline std::shared_ptr<const Embedder> make_embedder(const PipelineConfig& cfg) {
    return std::make_shared<HashingEmbedder>(cfg.dimension);
}

inline StageRuleSet make_rules(const PipelineConfig& cfg, std::shared_ptr<const Embedder> embedder) {
    if (!cfg.rules_file) return default_rules(std::move(embedder));
    std::ifstream in(*cfg.rules_file);
    if (!in) throw IoError("cannot open rule file " + *cfg.rules_file);
    try {
        return StageRuleSet(parse_stage_rules(in), std::move(embedder));
    } catch (const IoError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string(e.what()));
    }
}

inline PipelineResult run_pipeline(const std::vector<RawAlert>& alerts, const PipelineConfig& cfg) {
    auto embedder = make_embedder(cfg);
    StageRuleSet rules = make_rules(cfg, embedder);

    PipelineResult r;
    r.raw_alerts = alerts.size();
    r.min_nodes = cfg.paths.min_nodes;

    auto reduced = reduce(alerts, *embedder, cfg.reduction);
    classify_super_alerts(reduced, rules);
    r.graph = build_graph(std::move(reduced));
    r.hosts = score_hosts(r.graph.nodes(), cfg.scoring);

    PathOptions all = cfg.paths;
    all.min_nodes = 1;
    r.maximal_paths = enumerate_paths(r.graph, all).size();
    r.ranked = rank_paths(enumerate_paths(r.graph, cfg.paths), r.graph, r.hosts);
    return r;
}

inline std::string format_real(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

struct MetricsSummary {
    std::size_t k = 0;
    double detect_rate = 0.0;
    double false_path_rate = 0.0;
    double false_path_rate_over_candidates = 0.0;
    double detect_rate_all = 0.0;
};

inline MetricsSummary compute_metrics(const PipelineResult& r, const ScenarioGroundTruth& truth, std::size_t k) {
    auto top = top_k(r.ranked, k);
    MetricsSummary m;
    m.k = k;
    m.detect_rate = detect_rate(r.graph, top, truth);
    m.false_path_rate = false_path_rate(r.graph, top, truth);
    m.false_path_rate_over_candidates = false_path_rate_over_candidates(r.graph, top, truth, r.ranked.size());
    m.detect_rate_all = detect_rate(r.graph, r.ranked, truth);
    return m;
}

inline void write_report(std::ostream& os, const PipelineResult& r, std::size_t top_k_count,
                         const ScenarioGroundTruth* truth = nullptr) {
    const auto& g = r.graph;
    std::size_t repeat_total = 0;
    for (const auto& n : g.nodes()) repeat_total += n.repeat_count;

    os << "# maac report v1\n";
    os << "summary\traw_alerts=" << r.raw_alerts << "\tsuper_alerts=" << g.size()
       << "\tcompression_rate=" << (r.raw_alerts ? format_real(compression_rate(r.raw_alerts, g.size())) : "n/a")
       << "\tnodes=" << g.size() << "\tedges=" << g.edges().size()
       << "\tintra_source_edges=" << g.count(EdgeKind::IntraSource)
       << "\tcross_host_edges=" << g.count(EdgeKind::CrossHost) << "\tmaximal_paths=" << r.maximal_paths
       << "\tcandidate_paths=" << r.ranked.size() << "\tmin_nodes=" << r.min_nodes << "\n";
    for (const auto& d : r.diagnostics)
        os << "diagnostic\tsource=" << d.source << "\tline=" << d.diagnostic.line
           << "\treason=" << detail::quote(d.diagnostic.reason) << "\n";
    for (const auto& [ip, h] : r.hosts)
        os << "host\tip=" << ip.str() << "\tpagerank=" << format_real(h.pagerank) << "\talert_types=" << h.alert_type_count
           << "\tsuspiciousness=" << format_real(h.suspiciousness) << "\n";
    for (const auto& n : g.nodes())
        os << "alert\tid=" << n.id << "\tstage=" << stage_name(n.stage) << "\trepeat=" << n.repeat_count
           << "\tsip=" << (n.src() ? n.src()->str() : "-") << "\tdip=" << n.dst().str()
           << "\tstart=" << format_iso_timestamp(n.start_time) << "\tend=" << format_iso_timestamp(n.end_time)
           << "\tmsg=" << detail::quote(n.representative.msg) << "\n";
    for (std::size_t i = 0; i < r.ranked.size(); ++i) {
        const auto& p = r.ranked[i];
        os << "path\trank=" << i + 1 << "\tscore=" << format_real(p.score) << "\tlength=" << p.length() << "\tnodes=";
        for (std::size_t j = 0; j < p.nodes.size(); ++j) os << (j ? "," : "") << p.nodes[j];
        os << "\n";
    }
    std::optional<MetricsSummary> metrics;
    if (truth && !truth->true_paths.empty()) {
        metrics = compute_metrics(r, *truth, top_k_count);
        os << "metrics\ttop_k=" << metrics->k << "\tdetect_rate=" << format_real(metrics->detect_rate)
           << "\tfalse_path_rate=" << format_real(metrics->false_path_rate)
           << "\tfalse_path_rate_over_candidates=" << format_real(metrics->false_path_rate_over_candidates)
           << "\tdetect_rate_all_candidates=" << format_real(metrics->detect_rate_all) << "\n";
    }

    std::ostringstream h;
    h << std::fixed << std::setprecision(2);
    h << "#\n# Raw alerts: " << r.raw_alerts << " (sum of repeat counts " << repeat_total << ")\n";
    h << "# Super-alerts: " << g.size();
    if (r.raw_alerts) h << ", compression " << 100.0 * compression_rate(r.raw_alerts, g.size()) << "%";
    h << "\n# Graph: " << g.edges().size() << " edges (" << g.count(EdgeKind::CrossHost) << " cross-host)\n";
    h << "# Paths: " << r.maximal_paths << " maximal, " << r.ranked.size() << " with at least " << r.min_nodes
      << " nodes\n";

    std::vector<const HostScore*> by_susp;
    for (const auto& [ip, s] : r.hosts) by_susp.push_back(&s);
    std::stable_sort(by_susp.begin(), by_susp.end(),
                     [](const HostScore* a, const HostScore* b) { return a->suspiciousness > b->suspiciousness; });
    h << "# Most suspicious hosts:\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(5, by_susp.size()); ++i)
        h << "#   " << by_susp[i]->host.str() << "  " << std::setprecision(4) << by_susp[i]->suspiciousness
          << std::setprecision(2) << "\n";
    h << "# Top " << top_k_count << " attack paths:\n";
    for (std::size_t i = 0; i < std::min(top_k_count, r.ranked.size()); ++i) {
        const auto& p = r.ranked[i];
        h << "#   " << i + 1 << ". score " << p.score << ", " << p.length() << " alerts\n";
        const SuperAlert* prev = nullptr;
        for (auto id : p.nodes) {
            const auto& n = g.nodes()[id];
            // Collapse the long scan prefix to the transitions that matter.
            if (prev && prev->stage == n.stage && prev->representative.msg == n.representative.msg &&
                prev->src() == n.src())
                continue;
            h << "#        [" << stage_name(n.stage) << "] " << (n.src() ? n.src()->str() : "host") << " -> "
              << n.dst().str() << "  " << n.representative.msg << " (x" << n.repeat_count << ")\n";
            prev = &n;
        }
    }
    if (metrics)
        h << "# Detect rate (top " << metrics->k << "): " << 100.0 * metrics->detect_rate
          << "%, false path rate: " << 100.0 * metrics->false_path_rate << "%\n";
    os << h.str();
}

inline void write_report_dot(std::ostream& os, const PipelineResult& r) { write_dot(os, r.graph); }

}  // namespace maac
