#pragma once

// Core alert types shared by every stage of the correlation pipeline.

#include <arpa/inet.h>

#include <array>
#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace maac {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MalformedLine : public Error {
public:
    explicit MalformedLine(const std::string& reason) : Error("malformed line: " + reason) {}
};

class UnknownField : public Error {
public:
    explicit UnknownField(const std::string& name) : Error("unknown field: " + name), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

using Timestamp = std::chrono::sys_time<std::chrono::microseconds>;
using Duration = std::chrono::microseconds;

/// Validated IPv4 or IPv6 address, stored in canonical textual form.
class IpAddress {
public:
    IpAddress() = default;

    static std::optional<IpAddress> parse(std::string_view text) {
        std::string s(text);
        std::array<unsigned char, 16> buf{};
        char out[INET6_ADDRSTRLEN] = {};
        if (inet_pton(AF_INET, s.c_str(), buf.data()) == 1) {
            inet_ntop(AF_INET, buf.data(), out, sizeof out);
            return IpAddress(out);
        }
        if (inet_pton(AF_INET6, s.c_str(), buf.data()) == 1) {
            inet_ntop(AF_INET6, buf.data(), out, sizeof out);
            return IpAddress(out);
        }
        return std::nullopt;
    }

    static IpAddress from(std::string_view text) {
        auto ip = parse(text);
        if (!ip) throw MalformedLine("invalid IP address '" + std::string(text) + "'");
        return *ip;
    }

    const std::string& str() const noexcept { return text_; }
    bool empty() const noexcept { return text_.empty(); }

    friend bool operator==(const IpAddress&, const IpAddress&) = default;
    friend auto operator<=>(const IpAddress&, const IpAddress&) = default;

private:
    explicit IpAddress(std::string text) : text_(std::move(text)) {}
    std::string text_;
};

/// The four-phase attack taxonomy. The underlying value is the stage's base score.
enum class AttackStage : int {
    Scan = 1,
    Exploit = 2,
    GetAccessPrivilege = 3,
    PostAttack = 4,
};

inline constexpr std::array<AttackStage, 4> kAllStages = {
    AttackStage::Scan, AttackStage::Exploit, AttackStage::GetAccessPrivilege, AttackStage::PostAttack};

constexpr int base_score(AttackStage s) noexcept { return static_cast<int>(s); }

constexpr std::size_t stage_index(AttackStage s) noexcept { return static_cast<std::size_t>(s) - 1; }

/// Short names used in rule files, ground truth and reports.
constexpr std::string_view stage_name(AttackStage s) noexcept {
    switch (s) {
        case AttackStage::Scan: return "scan";
        case AttackStage::Exploit: return "exploit";
        case AttackStage::GetAccessPrivilege: return "gap";
        case AttackStage::PostAttack: return "post";
    }
    return "?";
}

inline std::optional<AttackStage> parse_stage(std::string_view name) noexcept {
    for (auto s : kAllStages)
        if (stage_name(s) == name) return s;
    return std::nullopt;
}

struct RawAlert {
    std::uint64_t id = 0;
    Timestamp timestamp{};
    std::string msg;
    std::optional<IpAddress> src_ip;
    std::optional<std::uint16_t> src_port;
    IpAddress dst_ip;
    std::optional<std::uint16_t> dst_port;
    std::string proto;
    std::optional<std::uint32_t> dgmlen;
    std::string sensor;

    friend bool operator==(const RawAlert&, const RawAlert&) = default;
};

/// Chronological order with ingest id as the tie-breaker.
inline bool chronological_less(const RawAlert& a, const RawAlert& b) noexcept {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.id < b.id;
}

}  // namespace maac
