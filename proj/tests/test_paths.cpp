#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace maac;
using maac::testing::bare_graph;
using maac::testing::maximal_paths_oracle;
using Edges = std::set<std::pair<std::size_t, std::size_t>>;

namespace {

std::set<std::vector<std::size_t>> as_set(const std::vector<AttackPath>& ps) {
    std::set<std::vector<std::size_t>> out;
    for (const auto& p : ps) out.insert(p.nodes);
    return out;
}

}  // namespace

TEST(Paths, LinearChainOfFive) {
    auto ps = enumerate_paths(bare_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}));
    ASSERT_EQ(ps.size(), 1u);
    EXPECT_EQ(ps[0].nodes, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
}

TEST(Paths, TwoNodesAreTooShort) { EXPECT_TRUE(enumerate_paths(bare_graph(2, {{0, 1}})).empty()); }

TEST(Paths, EmptyGraph) { EXPECT_TRUE(enumerate_paths(AlertGraph{}).empty()); }

TEST(Paths, IsolatedNodeIsAMaximalPathOfOne) {
    auto ps = enumerate_paths(bare_graph(3, {{0, 1}}), {1, 100});
    EXPECT_EQ(as_set(ps), (std::set<std::vector<std::size_t>>{{0, 1}, {2}}));
}

TEST(Paths, DiamondHasTwoPaths) {
    auto ps = enumerate_paths(bare_graph(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
    EXPECT_EQ(as_set(ps), (std::set<std::vector<std::size_t>>{{0, 1, 3}, {0, 2, 3}}));
}

TEST(Paths, CycleYieldsEveryRotation) {
    auto ps = enumerate_paths(bare_graph(3, {{0, 1}, {1, 2}, {2, 0}}));
    EXPECT_EQ(as_set(ps), (std::set<std::vector<std::size_t>>{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}));
}

TEST(Paths, OutputIsLexicographic) {
    auto ps = enumerate_paths(bare_graph(6, {{0, 2}, {1, 2}, {2, 3}, {2, 4}, {4, 5}}), {1, 100});
    for (std::size_t i = 1; i < ps.size(); ++i) EXPECT_LT(ps[i - 1].nodes, ps[i].nodes);
}

TEST(Paths, MatchesExhaustiveOracle) {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 1 + rng() % 9;
        Edges edges;
        for (std::size_t e = 0, m = rng() % (2 * n + 1); e < m; ++e) {
            std::size_t a = rng() % n, b = rng() % n;
            if (a != b) edges.insert({a, b});
        }
        for (std::size_t min_nodes : {1u, 3u})
            EXPECT_EQ(as_set(enumerate_paths(bare_graph(n, edges), {min_nodes, 1'000'000})),
                      maximal_paths_oracle(n, edges, min_nodes))
                << "graph " << t;
    }
}

TEST(Paths, ExplosionIsReported) {
    // Complete digraph on 9 nodes: 9! Hamiltonian paths.
    Edges edges;
    for (std::size_t a = 0; a < 9; ++a)
        for (std::size_t b = 0; b < 9; ++b)
            if (a != b) edges.insert({a, b});
    EXPECT_THROW(enumerate_paths(bare_graph(9, edges), {3, 10000}), PathExplosion);
}

TEST(Paths, InvalidMinNodes) { EXPECT_THROW(enumerate_paths(bare_graph(1, {}), {0, 10}), Error); }

TEST(Ranking, ScoreThenLengthThenIds) {
    std::vector<AttackPath> ps = {{{3, 4, 5}, 10.0}, {{0, 1}, 10.0}, {{0, 2, 5}, 10.0}, {{7, 8, 9}, 11.0}};
    std::sort(ps.begin(), ps.end(), path_rank_less);
    EXPECT_EQ(ps[0].nodes, (std::vector<std::size_t>{7, 8, 9}));
    EXPECT_EQ(ps[1].nodes, (std::vector<std::size_t>{0, 2, 5}));
    EXPECT_EQ(ps[2].nodes, (std::vector<std::size_t>{3, 4, 5}));
    EXPECT_EQ(ps[3].nodes, (std::vector<std::size_t>{0, 1}));
}

TEST(Ranking, ScoresComeFromTheHostTable) {
    auto alerts = generate_scenario(2).alerts;
    auto r = run_pipeline(alerts, PipelineConfig{});
    ASSERT_FALSE(r.ranked.empty());
    for (const auto& p : r.ranked) EXPECT_EQ(p.score, path_score(r.graph, p.nodes, r.hosts));
    for (std::size_t i = 1; i < r.ranked.size(); ++i) EXPECT_FALSE(path_rank_less(r.ranked[i], r.ranked[i - 1]));
}

TEST(Ranking, LongestTruePathOutranksEveryNoisePath) {
    auto sc = generate_scenario(1);
    auto r = run_pipeline(sc.alerts, PipelineConfig{});
    const AttackPath* longest_true = nullptr;
    double best_noise = -1.0;
    for (const auto& p : r.ranked) {
        bool all_attack = std::all_of(p.nodes.begin(), p.nodes.end(), [&](std::size_t id) {
            return sc.truth.alert_labels.at(r.graph.nodes()[id].representative.id).attack_related;
        });
        bool any_attack = std::any_of(p.nodes.begin(), p.nodes.end(), [&](std::size_t id) {
            return sc.truth.alert_labels.at(r.graph.nodes()[id].representative.id).attack_related;
        });
        if (all_attack && (!longest_true || p.length() > longest_true->length())) longest_true = &p;
        if (!any_attack) best_noise = std::max(best_noise, p.score);
    }
    ASSERT_NE(longest_true, nullptr);
    EXPECT_GT(longest_true->score, best_noise);
}

TEST(Ranking, ScenarioTopThreeCoverTheAttack) {
    auto sc = generate_scenario(1);
    auto r = run_pipeline(sc.alerts, PipelineConfig{});
    EXPECT_EQ(detect_rate(r.graph, top_k(r.ranked, 3), sc.truth), 1.0);
    EXPECT_EQ(false_path_rate(r.graph, top_k(r.ranked, 3), sc.truth), 0.0);
}
