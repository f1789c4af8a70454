#pragma once

// Keyword-first attack-stage classification with an embedding-centroid fallback.

#include <algorithm>
#include <array>
#include <cctype>
#include <istream>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "maac/alert.hpp"
#include "maac/embedding.hpp"

namespace maac {

struct StageRule {
    enum class Kind { Substring, Tokens };

    Kind kind = Kind::Substring;
    std::string pattern;  // lowercase; for Tokens, space-separated words
    AttackStage stage = AttackStage::Scan;

    static StageRule substring(std::string_view p, AttackStage s) { return {Kind::Substring, lower(p), s}; }
    static StageRule tokens(std::string_view p, AttackStage s) { return {Kind::Tokens, lower(p), s}; }

    static std::string lower(std::string_view s) {
        std::string out(s);
        for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return out;
    }
};

namespace detail {

inline std::set<std::string> word_set(std::string_view text) {
    std::set<std::string> out;
    for (auto& t : tokenize(text))
        if (t.kind == Token::Kind::Word) out.insert(std::move(t.text));
    return out;
}

}  // namespace detail

/// Ordered rule list plus one centroid per stage. Immutable after construction.
class StageRuleSet {
public:
    StageRuleSet(std::vector<StageRule> rules, std::shared_ptr<const Embedder> embedder)
        : rules_(std::move(rules)), embedder_(std::move(embedder)) {
        if (!embedder_) throw Error("stage rule set needs an embedder");
        std::array<std::vector<double>, 4> sums;
        std::array<bool, 4> covered{};
        for (auto& s : sums) s.assign(embedder_->dimension(), 0.0);
        for (const auto& r : rules_) {
            if (r.pattern.empty()) throw Error("empty stage rule pattern");
            auto idx = stage_index(r.stage);
            covered[idx] = true;
            MsgVector v = embedder_->embed(r.pattern);
            if (v.norm() == 0.0) continue;
            for (std::size_t i = 0; i < v.dimension(); ++i) sums[idx][i] += v.values()[i] / v.norm();
        }
        for (auto s : kAllStages)
            if (!covered[stage_index(s)])
                throw Error("stage rule set has no rule for stage " + std::string(stage_name(s)));
        for (std::size_t i = 0; i < 4; ++i) centroids_[i] = MsgVector(std::move(sums[i]));
    }

    const std::vector<StageRule>& rules() const noexcept { return rules_; }
    const MsgVector& centroid(AttackStage s) const noexcept { return centroids_[stage_index(s)]; }
    const Embedder& embedder() const noexcept { return *embedder_; }

    /// Index of the first matching rule, or rules().size() when none matches.
    std::size_t first_match(std::string_view msg) const {
        std::string lowered = StageRule::lower(msg);
        std::set<std::string> words;
        bool have_words = false;
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            const auto& r = rules_[i];
            if (r.kind == StageRule::Kind::Substring) {
                if (lowered.find(r.pattern) != std::string::npos) return i;
                continue;
            }
            if (!have_words) {
                words = detail::word_set(lowered);
                have_words = true;
            }
            auto needed = detail::word_set(r.pattern);
            if (!needed.empty() && std::includes(words.begin(), words.end(), needed.begin(), needed.end()))
                return i;
        }
        return rules_.size();
    }

    AttackStage classify(std::string_view msg) const {
        auto i = first_match(msg);
        if (i < rules_.size()) return rules_[i].stage;
        MsgVector v = embedder_->embed(msg);
        AttackStage best = AttackStage::Scan;
        double best_sim = -2.0;
        for (auto s : kAllStages) {
            double sim = similarity(v, centroids_[stage_index(s)]);
            if (sim > best_sim) {
                best_sim = sim;
                best = s;
            }
        }
        return best;
    }

private:
    std::vector<StageRule> rules_;
    std::shared_ptr<const Embedder> embedder_;
    std::array<MsgVector, 4> centroids_;
};

inline AttackStage classify(const RawAlert& alert, const StageRuleSet& rules) { return rules.classify(alert.msg); }

/// Built-in rules covering every row of the stage taxonomy. Order matters:
/// PostAttack first (so "command&control" wins over generic words), then
/// Exploit (so "shellcode" and "root credentials" are not taken for access),
/// then GetAccessPrivilege, then Scan.
inline std::vector<StageRule> default_stage_rules() {
    using S = AttackStage;
    using R = StageRule;
    return {
        R::substring("command&control", S::PostAttack),
        R::substring("command and control", S::PostAttack),
        R::substring("command-and-control", S::PostAttack),
        R::tokens("c2", S::PostAttack),
        R::substring("data transfer", S::PostAttack),
        R::substring("file transfer", S::PostAttack),
        R::substring("exfiltrat", S::PostAttack),
        R::substring("ddos", S::PostAttack),
        R::substring("handler", S::PostAttack),

        R::substring("exploit", S::Exploit),
        R::substring("overflow", S::Exploit),
        R::substring("injection", S::Exploit),
        R::substring("malicious file", S::Exploit),
        R::substring("shellcode", S::Exploit),
        R::substring("root credentials", S::Exploit),
        R::substring("cross site", S::Exploit),
        R::tokens("xss", S::Exploit),
        R::substring("remote include", S::Exploit),

        R::substring("login", S::GetAccessPrivilege),
        R::substring("logon", S::GetAccessPrivilege),
        R::tokens("rsh", S::GetAccessPrivilege),
        R::tokens("ssh", S::GetAccessPrivilege),
        R::tokens("rdp", S::GetAccessPrivilege),
        R::substring("shell", S::GetAccessPrivilege),
        R::substring("root access", S::GetAccessPrivilege),
        R::substring("privilege", S::GetAccessPrivilege),

        R::substring("scan", S::Scan),
        R::substring("ping", S::Scan),
        R::substring("sweep", S::Scan),
        R::substring("probe", S::Scan),
        R::substring("version", S::Scan),
        R::substring("vulnerability", S::Scan),
        R::substring("social engineering", S::Scan),
        R::substring("discover", S::Scan),
        R::tokens("icmp", S::Scan),
        R::tokens("nmap", S::Scan),
    };
}

inline StageRuleSet default_rules(std::shared_ptr<const Embedder> embedder) {
    return StageRuleSet(default_stage_rules(), std::move(embedder));
}

/// Rule file: one `stage<TAB>pattern` per line, stage in scan|exploit|gap|post.
/// A pattern written as `{w1 w2}` matches when all words occur as tokens;
/// otherwise it is a case-insensitive substring.
inline std::vector<StageRule> parse_stage_rules(std::istream& in) {
    std::vector<StageRule> rules;
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        std::string_view l = line;
        while (!l.empty() && (l.back() == '\r' || l.back() == ' ')) l.remove_suffix(1);
        if (l.empty() || l.front() == '#') continue;
        auto tab = l.find('\t');
        if (tab == std::string_view::npos) throw Error("rule line " + std::to_string(lineno) + ": expected stage<TAB>pattern");
        auto stage = parse_stage(l.substr(0, tab));
        if (!stage) throw Error("rule line " + std::to_string(lineno) + ": unknown stage '" + std::string(l.substr(0, tab)) + "'");
        std::string_view pattern = l.substr(tab + 1);
        if (pattern.size() >= 2 && pattern.front() == '{' && pattern.back() == '}')
            rules.push_back(StageRule::tokens(pattern.substr(1, pattern.size() - 2), *stage));
        else if (!pattern.empty())
            rules.push_back(StageRule::substring(pattern, *stage));
        else
            throw Error("rule line " + std::to_string(lineno) + ": empty pattern");
    }
    return rules;
}

}  // namespace maac
