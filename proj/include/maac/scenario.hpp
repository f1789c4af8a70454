#pragma once

// Synthetic multi-step intrusion in the style of the DARPA 2000 LLDOS 1.0 run:
// an external attacker sweeps the network with ICMP echo requests, probes and
// exploits the sadmind service on a handful of hosts, gains root shells on
// three of them, installs a DDoS toolkit, and drives the compromised hosts
// (one master, two agents) to flood a server. Background alerts from
// unrelated sources are mixed in at the profile's noise rate.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "maac/alert.hpp"
#include "maac/metrics.hpp"
#include "maac/parse.hpp"

namespace maac {

class InvalidProfile : public Error {
public:
    explicit InvalidProfile(const std::string& why) : Error("invalid scenario profile: " + why) {}
};

struct ScenarioProfile {
    int hosts = 40;           // internal hosts swept by the attacker (>= 5)
    double noise_rate = 0.4;  // fraction of the corpus that is background noise, in [0, 1)
    int storm_size = 8;       // upper bound of a repeat storm; floods are 20x this
};

struct Scenario {
    std::vector<RawAlert> alerts;  // ids 1..n in emission order (chronological)
    ScenarioGroundTruth truth;

    std::vector<std::string> record_lines() const {
        std::vector<std::string> out;
        out.reserve(alerts.size());
        for (const auto& a : alerts) out.push_back(format_record_line(a));
        return out;
    }
};

namespace scenario {

inline const IpAddress kAttacker = IpAddress::from("202.77.162.213");
inline const IpAddress kMaster = IpAddress::from("172.16.115.20");
inline const IpAddress kAgentA = IpAddress::from("172.16.112.50");
inline const IpAddress kAgentB = IpAddress::from("172.16.112.10");
inline const IpAddress kTarget = IpAddress::from("131.84.1.31");
inline const std::vector<IpAddress> kFailedVictims = {IpAddress::from("172.16.112.105"),
                                                      IpAddress::from("172.16.113.148")};

inline constexpr std::string_view kPing = "ICMP PING";
inline constexpr std::string_view kSadmindProbe = "RPC sadmind UDP PING";
inline constexpr std::string_view kSadmindExploit = "RPC sadmind query with root credentials attempt UDP";
inline constexpr std::string_view kRootShell = "RSERVICES rsh root";
inline constexpr std::string_view kRcp = "RSERVICES rcp data transfer";
inline constexpr std::string_view kToolkitFetch = "TFTP GET mstream binary file transfer";
inline constexpr std::string_view kToolkitDropped = "EDR malicious file mstream written to disk";
inline constexpr std::string_view kClientToHandler = "DDOS mstream client to handler";
inline constexpr std::string_view kHandlerToAgent = "DDOS mstream handler to agent";
inline constexpr std::string_view kAgentToHandler = "DDOS mstream agent to handler";
inline constexpr std::string_view kFlood = "DDOS mstream TCP flood";

/// Background signatures. None of them classifies as GetAccessPrivilege, so
/// noise can never anchor a cross-host edge.
inline const std::vector<std::string_view> kNoiseNetworkMsgs = {
    "SCAN UPnP service discover attempt",
    "SCAN SOCKS Proxy attempt",
    "SCAN nmap XMAS",
    "ICMP Destination Unreachable Port Unreachable",
    "ICMP PING BSDtype",
    "ICMP PING Windows",
    "INFO web bug version probe",
    "WEB-MISC directory vulnerability scan",
    "WEB-PHP remote include exploit attempt",
    "WEB-MISC SQL injection attempt",
    "WEB-ATTACKS cross site scripting attempt",
    "SHELLCODE x86 NOOP",
    "WEB-CLIENT malicious file download",
    "P2P BitTorrent data transfer",
    "POLICY FTP file transfer",
};

inline const std::vector<std::string_view> kNoiseHostMsgs = {
    "EDR adware bundle malicious file quarantined",
    "EDR port scan activity detected",
    "EDR potentially unwanted program data transfer",
    "EDR exploit mitigation triggered in browser",
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Inclusive range. Mapped from the raw engine output so results do not
    // depend on the standard library's distribution implementations.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(eng_() % span);
    }

    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(v.size()) - 1))];
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace scenario

inline Scenario generate_scenario(std::uint64_t seed, const ScenarioProfile& profile = {}) {
    using namespace scenario;
    using std::chrono::milliseconds;
    using std::chrono::seconds;

    if (profile.hosts < 5) throw InvalidProfile("hosts must be at least 5");
    if (profile.hosts > 400) throw InvalidProfile("hosts must be at most 400");
    if (!(profile.noise_rate >= 0.0 && profile.noise_rate < 1.0)) throw InvalidProfile("noise_rate must be in [0, 1)");
    if (profile.storm_size < 1) throw InvalidProfile("storm_size must be at least 1");

    Rng rng(seed);
    const Timestamp t0 = Timestamp{std::chrono::sys_days{std::chrono::year{2000} / 3 / 7}} + std::chrono::hours{9} +
                         std::chrono::minutes{51} + seconds{36};

    struct Pending {
        RawAlert alert;
        AlertLabel label;
    };
    std::vector<Pending> pending;

    auto emit = [&](Timestamp ts, std::string_view msg, const std::optional<IpAddress>& src, const IpAddress& dst,
                    std::string proto, std::optional<std::uint16_t> sport, std::optional<std::uint16_t> dport,
                    std::string sensor, AlertLabel label) {
        RawAlert a;
        a.timestamp = ts;
        a.msg = std::string(msg);
        a.src_ip = src;
        a.src_port = src ? sport : std::nullopt;
        a.dst_ip = dst;
        a.dst_port = dport;
        if (src) a.dgmlen = static_cast<std::uint32_t>(rng.uniform(28, 1500));
        a.proto = std::move(proto);
        a.sensor = std::move(sensor);
        pending.push_back({std::move(a), label});
    };
    auto net = [&](Timestamp ts, std::string_view msg, const IpAddress& src, const IpAddress& dst, std::string proto,
                   std::optional<std::uint16_t> dport, int step, bool attack = true) {
        const bool icmp = proto == "ICMP";
        std::optional<std::uint16_t> sport;
        if (!icmp) sport = static_cast<std::uint16_t>(rng.uniform(1024, 65535));
        std::string sensor = dst.str().starts_with("172.16.") ? "snort-inside" : "snort-dmz";
        emit(ts, msg, src, dst, std::move(proto), sport, icmp ? std::nullopt : dport, std::move(sensor),
             {attack, step});
    };

    // Internal address plan: the five sadmind targets plus deterministic bystanders.
    std::vector<IpAddress> internal = {kMaster, kAgentA, kAgentB, kFailedVictims[0], kFailedVictims[1]};
    for (int i = 0; static_cast<int>(internal.size()) < profile.hosts; ++i) {
        auto ip = IpAddress::from("172.16." + std::to_string(112 + i % 4) + "." + std::to_string(1 + (i * 37) % 250));
        if (std::find(internal.begin(), internal.end(), ip) == internal.end()) internal.push_back(ip);
    }
    const std::vector<IpAddress> victims = {kMaster, kAgentA, kAgentB};
    std::vector<IpAddress> sadmind_targets = {kFailedVictims[0], kMaster, kAgentA, kFailedVictims[1], kAgentB};

    // 1. ICMP sweep in a seed-dependent host order.
    std::vector<IpAddress> sweep = internal;
    for (std::size_t i = sweep.size(); i > 1; --i)
        std::swap(sweep[i - 1], sweep[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1))]);
    Timestamp t = t0;
    for (const auto& host : sweep) {
        auto pings = rng.uniform(1, profile.storm_size);
        for (int j = 0; j < pings; ++j) net(t + milliseconds{500 * j}, kPing, kAttacker, host, "ICMP", {}, 0);
        t += seconds{3};
    }

    // 2. sadmind probes against the live Solaris hosts.
    t = t0 + std::chrono::minutes{20};
    for (const auto& host : sadmind_targets) {
        for (int j = 0; j < 2; ++j) net(t + seconds{j}, kSadmindProbe, kAttacker, host, "UDP", 111, 0);
        t += seconds{10};
    }

    // 3. Six exploit attempts against each target.
    t = t0 + std::chrono::minutes{40};
    for (const auto& host : sadmind_targets) {
        for (int j = 0; j < 6; ++j) net(t + seconds{j}, kSadmindExploit, kAttacker, host, "UDP", 32773, 1);
        t += seconds{30};
    }

    // 4. Root shells on the three compromised hosts, then toolkit installation.
    const Timestamp t_access = t0 + std::chrono::minutes{60};
    for (std::size_t i = 0; i < victims.size(); ++i) {
        Timestamp ta = t_access + seconds{20 * static_cast<int>(i)};
        for (int j = 0; j < 2; ++j) net(ta + seconds{j}, kRootShell, kAttacker, victims[i], "TCP", 514, 2);
    }
    for (std::size_t i = 0; i < victims.size(); ++i) {
        Timestamp ti = t_access + seconds{100 + 60 * static_cast<int>(i)};
        net(ti, kRcp, victims[i], kAttacker, "TCP", 514, 3);
        net(ti + seconds{15}, kToolkitFetch, victims[i], kAttacker, "UDP", 69, 3);
        emit(ti + seconds{20}, kToolkitDropped, std::nullopt, victims[i], "", {}, {}, "edr", {true, 1});
    }

    // 5. The attacker drives the master, the master drives the agents, and all
    //    three flood the target in turn.
    const Timestamp t_ddos = t0 + std::chrono::minutes{80};
    net(t_ddos, kClientToHandler, kAttacker, kMaster, "TCP", 6723, 3);
    net(t_ddos + seconds{1}, kClientToHandler, kAttacker, kMaster, "TCP", 6723, 3);
    for (std::size_t i = 1; i < victims.size(); ++i)
        for (int j = 0; j < 2; ++j)
            net(t_ddos + seconds{10 + 2 * static_cast<int>(i) + j}, kHandlerToAgent, kMaster, victims[i], "UDP", 7983, 3);
    for (std::size_t i = 1; i < victims.size(); ++i)
        for (int j = 0; j < 2; ++j)
            net(t_ddos + seconds{30 + 5 * static_cast<int>(i) + j}, kAgentToHandler, victims[i], kMaster, "UDP", 6838, 3);
    Timestamp tf = t_ddos + seconds{100};
    const int flood = 20 * profile.storm_size;
    for (const auto& zombie : victims) {
        for (int j = 0; j < flood; ++j) net(tf + milliseconds{200 * j}, kFlood, zombie, kTarget, "TCP", 80, 3);
        tf += milliseconds{200 * flood} + seconds{5};
    }

    // 6. Background noise.
    const std::size_t attack_count = pending.size();
    const auto noise_target = static_cast<std::size_t>(
        std::llround(static_cast<double>(attack_count) * profile.noise_rate / (1.0 - profile.noise_rate)));
    const std::int64_t span_ms = 95LL * 60 * 1000;
    auto external_ip = [&] {
        while (true) {
            int a = static_cast<int>(rng.uniform(24, 223));
            if (a == 127 || a == 172 || a == 202 || a == 131) continue;
            return IpAddress::from(std::to_string(a) + "." + std::to_string(rng.uniform(0, 255)) + "." +
                                   std::to_string(rng.uniform(0, 255)) + "." + std::to_string(rng.uniform(1, 254)));
        }
    };
    std::vector<IpAddress> noise_targets(internal.begin(), internal.end());
    noise_targets.push_back(kTarget);
    const IpAddress chatty = external_ip();
    int chatty_events = 0;
    std::size_t noise = 0;
    while (noise < noise_target) {
        auto size = static_cast<std::size_t>(rng.uniform(1, profile.storm_size));
        size = std::min(size, noise_target - noise);
        Timestamp start = t0 + milliseconds{rng.uniform(0, span_ms)};
        double kind = rng.unit();
        if (kind < 0.25) {
            const auto& host = rng.pick(internal);
            auto msg = rng.pick(kNoiseHostMsgs);
            for (std::size_t j = 0; j < size; ++j)
                emit(start + seconds{2 * static_cast<int>(j)}, msg, std::nullopt, host, "", {}, {}, "edr", {false, -1});
        } else {
            IpAddress src = (kind > 0.93 && chatty_events < 4) ? chatty : external_ip();
            if (src == chatty) ++chatty_events;
            const auto& dst = rng.pick(noise_targets);
            auto msg = rng.pick(kNoiseNetworkMsgs);
            std::string proto = msg.starts_with("ICMP") ? "ICMP" : (msg.starts_with("P2P") ? "UDP" : "TCP");
            auto dport = static_cast<std::uint16_t>(rng.pick(std::vector<int>{21, 53, 80, 443, 1080, 1900, 6881}));
            for (std::size_t j = 0; j < size; ++j)
                net(start + seconds{2 * static_cast<int>(j)}, msg, src, dst, proto, dport, -1, false);
        }
        noise += size;
    }

    std::stable_sort(pending.begin(), pending.end(),
                     [](const Pending& a, const Pending& b) { return a.alert.timestamp < b.alert.timestamp; });

    Scenario s;
    s.alerts.reserve(pending.size());
    for (std::size_t i = 0; i < pending.size(); ++i) {
        pending[i].alert.id = i + 1;
        s.truth.alert_labels[i + 1] = pending[i].label;
        s.alerts.push_back(std::move(pending[i].alert));
    }
    for (const auto& v : victims)
        s.truth.true_paths.push_back({{{v, AttackStage::Scan},
                                       {v, AttackStage::Exploit},
                                       {v, AttackStage::GetAccessPrivilege},
                                       {v, AttackStage::PostAttack}}});
    return s;
}

}  // namespace maac
