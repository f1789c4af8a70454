#pragma once

// Alert reduction: per destination host, in chronological order, runs of
// consecutive alerts from the same source whose msgs are similar to the run's
// first member are folded into one weighted super-alert.

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "maac/alert.hpp"
#include "maac/embedding.hpp"
#include "maac/stage_classifier.hpp"

namespace maac {

class EmptyInput : public Error {
public:
    EmptyInput() : Error("compression rate undefined for zero input alerts") {}
};

struct SuperAlert {
    std::size_t id = 0;         // position in the reduced, chronologically sorted set
    RawAlert representative;    // earliest member
    std::size_t repeat_count = 0;
    std::vector<std::uint64_t> member_ids;
    AttackStage stage = AttackStage::Scan;
    Timestamp start_time{};
    Timestamp end_time{};

    const IpAddress& dst() const noexcept { return representative.dst_ip; }
    const std::optional<IpAddress>& src() const noexcept { return representative.src_ip; }
};

struct ReductionOptions {
    double threshold = 0.7;
    Duration window = std::chrono::seconds{120};
};

/// Caches one embedding per distinct msg text.
class EmbeddingCache {
public:
    explicit EmbeddingCache(const Embedder& embedder) : embedder_(embedder) {}

    const MsgVector& get(const std::string& msg) {
        auto it = cache_.find(msg);
        if (it == cache_.end()) it = cache_.emplace(msg, embedder_.embed(msg)).first;
        return it->second;
    }

    double similarity(const std::string& a, const std::string& b) {
        if (a == b) return 1.0;
        return maac::similarity(get(a), get(b));
    }

private:
    const Embedder& embedder_;
    std::unordered_map<std::string, MsgVector> cache_;
};

inline std::vector<SuperAlert> reduce(const std::vector<RawAlert>& alerts, const Embedder& embedder,
                                      const ReductionOptions& opts = {}) {
    if (!(opts.threshold > 0.0 && opts.threshold <= 1.0)) throw Error("reduction threshold must be in (0, 1]");
    if (opts.window <= Duration::zero()) throw Error("reduction window must be positive");

    std::map<IpAddress, std::vector<const RawAlert*>> by_host;
    for (const auto& a : alerts) by_host[a.dst_ip].push_back(&a);

    EmbeddingCache cache(embedder);
    std::vector<SuperAlert> out;
    for (auto& [host, group] : by_host) {
        std::sort(group.begin(), group.end(),
                  [](const RawAlert* a, const RawAlert* b) { return chronological_less(*a, *b); });
        bool open = false;
        for (const RawAlert* a : group) {
            if (open) {
                SuperAlert& run = out.back();
                if (a->src_ip == run.representative.src_ip && a->timestamp - run.end_time <= opts.window &&
                    cache.similarity(run.representative.msg, a->msg) >= opts.threshold) {
                    run.member_ids.push_back(a->id);
                    run.repeat_count += 1;
                    run.end_time = a->timestamp;
                    continue;
                }
            }
            out.push_back(SuperAlert{0, *a, 1, {a->id}, AttackStage::Scan, a->timestamp, a->timestamp});
            open = true;
        }
    }

    std::sort(out.begin(), out.end(), [](const SuperAlert& a, const SuperAlert& b) {
        return chronological_less(a.representative, b.representative);
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].id = i;
    return out;
}

/// Assigns each super-alert the stage of its representative msg.
inline void classify_super_alerts(std::vector<SuperAlert>& alerts, const StageRuleSet& rules) {
    std::unordered_map<std::string, AttackStage> memo;
    for (auto& sa : alerts) {
        auto it = memo.find(sa.representative.msg);
        if (it == memo.end()) it = memo.emplace(sa.representative.msg, rules.classify(sa.representative.msg)).first;
        sa.stage = it->second;
    }
}

/// Fraction of raw alerts eliminated: 1 - output/input.
inline double compression_rate(std::size_t input_count, std::size_t output_count) {
    if (input_count == 0) throw EmptyInput();
    if (output_count > input_count) throw Error("reduced count exceeds input count");
    return 1.0 - static_cast<double>(output_count) / static_cast<double>(input_count);
}

}  // namespace maac
