#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace maac;
using S = AttackStage;

namespace {

const StageRuleSet& rules() {
    static const StageRuleSet r = default_rules(std::make_shared<HashingEmbedder>());
    return r;
}

}  // namespace

TEST(StageClassifier, ReferenceExamples) {
    EXPECT_EQ(rules().classify("ICMP PING"), S::Scan);
    EXPECT_EQ(rules().classify("RSERVICES rsh root — shell connect"), S::GetAccessPrivilege);
    EXPECT_EQ(rules().classify("DDOS mstream client to handler — command&control"), S::PostAttack);
}

TEST(StageClassifier, TaxonomyPhrasesMapToTheirRow) {
    const std::vector<std::pair<std::string, S>> phrases = {
        {"IP address scan", S::Scan},          {"port scan", S::Scan},
        {"version scan", S::Scan},             {"Vulnerability scan", S::Scan},
        {"social engineering", S::Scan},       {"Malicious file", S::Exploit},
        {"command injection", S::Exploit},     {"SSH login", S::GetAccessPrivilege},
        {"RDP login", S::GetAccessPrivilege},  {"shell connect", S::GetAccessPrivilege},
        {"Data transfer", S::PostAttack},      {"command&control", S::PostAttack},
    };
    for (const auto& [msg, stage] : phrases) EXPECT_EQ(rules().classify(msg), stage) << msg;
}

TEST(StageClassifier, SadmindRootCredentialsIsExploitNotAccess) {
    EXPECT_EQ(rules().classify("sadmind query with root credentials attempt"), S::Exploit);
    EXPECT_EQ(rules().classify(scenario::kSadmindExploit), S::Exploit);
    EXPECT_EQ(rules().classify(scenario::kSadmindProbe), S::Scan);
    EXPECT_EQ(rules().classify(scenario::kRootShell), S::GetAccessPrivilege);
}

TEST(StageClassifier, ScenarioSignatures) {
    EXPECT_EQ(rules().classify(scenario::kPing), S::Scan);
    EXPECT_EQ(rules().classify(scenario::kRcp), S::PostAttack);
    EXPECT_EQ(rules().classify(scenario::kToolkitFetch), S::PostAttack);
    EXPECT_EQ(rules().classify(scenario::kToolkitDropped), S::Exploit);
    for (auto m : {scenario::kClientToHandler, scenario::kHandlerToAgent, scenario::kAgentToHandler, scenario::kFlood})
        EXPECT_EQ(rules().classify(m), S::PostAttack) << m;
}

TEST(StageClassifier, TokenRulesNeedWholeWords) {
    // "sshd" is not the token "ssh"; "crash" does not contain the token "rsh".
    EXPECT_EQ(rules().first_match("sshd crash"), rules().rules().size());
    EXPECT_EQ(rules().classify("SSH brute force"), S::GetAccessPrivilege);
}

TEST(StageClassifier, FallbackIsNearestCentroidAndDeterministic) {
    const std::string msg = "weird unknown event";
    ASSERT_EQ(rules().first_match(msg), rules().rules().size());
    auto v = rules().embedder().embed(msg);
    S best = S::Scan;
    double best_sim = -2.0;
    for (auto s : kAllStages) {
        double sim = similarity(v, rules().centroid(s));
        if (sim > best_sim) best_sim = sim, best = s;
    }
    EXPECT_EQ(rules().classify(msg), best);
    EXPECT_EQ(default_rules(std::make_shared<HashingEmbedder>()).classify(msg), best);
}

TEST(StageClassifier, FallbackPrefersSimilarVocabulary) {
    // No rule fires, but the words overlap the access rules' vocabulary.
    ASSERT_EQ(rules().first_match("remote sessions via sshd"), rules().rules().size());
    EXPECT_EQ(rules().classify("remote sessions via sshd"), S::GetAccessPrivilege);
}

TEST(StageClassifier, RawAlertOverload) {
    auto a = maac::testing::make_alert(1, 0, "SCAN nmap XMAS", "1.1.1.1", "2.2.2.2");
    EXPECT_EQ(classify(a, rules()), S::Scan);
}

TEST(StageClassifier, RuleSetMustCoverEveryStage) {
    std::vector<StageRule> partial = {StageRule::substring("scan", S::Scan)};
    EXPECT_THROW(StageRuleSet(partial, std::make_shared<HashingEmbedder>()), Error);
}

TEST(StageRuleFile, ParsesBothPatternKinds) {
    std::istringstream in("# comment\nscan\tping\ngap\t{ssh login}\nexploit\tOverflow\r\npost\tddos\n");
    auto r = parse_stage_rules(in);
    ASSERT_EQ(r.size(), 4u);
    EXPECT_EQ(r[1].kind, StageRule::Kind::Tokens);
    EXPECT_EQ(r[1].pattern, "ssh login");
    EXPECT_EQ(r[2].pattern, "overflow");
    StageRuleSet set(r, std::make_shared<HashingEmbedder>());
    EXPECT_EQ(set.classify("SSH user login ok"), S::GetAccessPrivilege);
    EXPECT_NE(set.first_match("ssh only"), 1u);
}

TEST(StageRuleFile, Errors) {
    std::istringstream no_tab("scan ping\n");
    EXPECT_THROW(parse_stage_rules(no_tab), Error);
    std::istringstream bad_stage("lateral\tping\n");
    EXPECT_THROW(parse_stage_rules(bad_stage), Error);
}

TEST(StageRuleFile, ShippedRuleFileEqualsBuiltInRules) {
    std::ifstream in(std::string(MAAC_SOURCE_DIR) + "/config/stage_rules.tsv");
    ASSERT_TRUE(in);
    auto parsed = parse_stage_rules(in);
    auto builtin = default_stage_rules();
    ASSERT_EQ(parsed.size(), builtin.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        EXPECT_EQ(parsed[i].kind, builtin[i].kind) << i;
        EXPECT_EQ(parsed[i].pattern, builtin[i].pattern) << i;
        EXPECT_EQ(parsed[i].stage, builtin[i].stage) << i;
    }
}
