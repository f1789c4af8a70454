#pragma once

// Readers and writers for the two alert line formats:
//
//   fast     MM/DD-HH:MM:SS.ffffff [**] [gid:sid:rev] MSG [**] [Classification: ...]
//            [Priority: N] {PROTO} SRC[:SPORT] -> DST[:DPORT]
//   records  tab-separated key=value pairs; keys ts, msg, sip, sport, dip, dport,
//            proto, dgmlen, sensor; msg is double-quoted and backslash-escaped.

#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maac/alert.hpp"

namespace maac {

class UnsupportedFormat : public Error {
public:
    explicit UnsupportedFormat(const std::string& name) : Error("unsupported input format: " + name) {}
};

enum class InputFormat { Fast, Records };

inline InputFormat parse_input_format(std::string_view name) {
    if (name == "fast") return InputFormat::Fast;
    if (name == "records") return InputFormat::Records;
    throw UnsupportedFormat(std::string(name));
}

namespace detail {

inline std::string_view trim(std::string_view s) noexcept {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
        s.remove_suffix(1);
    return s;
}

template <typename Int>
std::optional<Int> parse_uint(std::string_view s, Int max) {
    if (s.empty() || s.size() > 20) return std::nullopt;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || v > static_cast<std::uint64_t>(max))
        return std::nullopt;
    return static_cast<Int>(v);
}

inline std::uint16_t parse_port(std::string_view s) {
    auto p = parse_uint<std::uint16_t>(s, 65535);
    if (!p) throw MalformedLine("invalid port '" + std::string(s) + "'");
    return *p;
}

inline int fixed_digits(std::string_view s, std::size_t pos, std::size_t n, std::string_view what) {
    if (pos + n > s.size()) throw MalformedLine("truncated " + std::string(what));
    int v = 0;
    for (std::size_t i = pos; i < pos + n; ++i) {
        if (s[i] < '0' || s[i] > '9') throw MalformedLine("non-digit in " + std::string(what));
        v = v * 10 + (s[i] - '0');
    }
    return v;
}

inline void expect_char(std::string_view s, std::size_t pos, char c, std::string_view what) {
    if (pos >= s.size() || s[pos] != c)
        throw MalformedLine("expected '" + std::string(1, c) + "' in " + std::string(what));
}

inline Timestamp make_timestamp(int year, int month, int day, int hour, int minute, int second,
                                long micros, std::string_view what) {
    using namespace std::chrono;
    year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                       std::chrono::day{static_cast<unsigned>(day)}};
    if (!ymd.ok() || hour > 23 || minute > 59 || second > 60)
        throw MalformedLine("out-of-range " + std::string(what));
    return Timestamp{sys_days{ymd}} + hours{hour} + minutes{minute} + seconds{second} +
           microseconds{micros};
}

// Reads ".f{1,6}" starting at pos (pos must point at '.'), returning microseconds.
inline long fraction_micros(std::string_view s, std::size_t pos, std::size_t end, std::string_view what) {
    expect_char(s, pos, '.', what);
    std::size_t n = end - pos - 1;
    if (n == 0 || n > 6) throw MalformedLine("bad fractional seconds in " + std::string(what));
    long v = fixed_digits(s, pos + 1, n, what);
    for (std::size_t i = n; i < 6; ++i) v *= 10;
    return v;
}

struct Endpoint {
    IpAddress ip;
    std::optional<std::uint16_t> port;
};

inline Endpoint parse_endpoint(std::string_view tok) {
    if (auto ip = IpAddress::parse(tok)) return {*ip, std::nullopt};
    if (!tok.empty() && tok.front() == '[') {
        auto close = tok.find(']');
        if (close == std::string_view::npos || close + 1 >= tok.size() || tok[close + 1] != ':')
            throw MalformedLine("bad bracketed endpoint '" + std::string(tok) + "'");
        return {IpAddress::from(tok.substr(1, close - 1)), parse_port(tok.substr(close + 2))};
    }
    auto colon = tok.rfind(':');
    if (colon == std::string_view::npos)
        throw MalformedLine("invalid endpoint '" + std::string(tok) + "'");
    return {IpAddress::from(tok.substr(0, colon)), parse_port(tok.substr(colon + 1))};
}

inline std::string quote(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    out.push_back('"');
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

inline std::string unquote(std::string_view s) {
    if (s.size() < 2 || s.front() != '"' || s.back() != '"')
        throw MalformedLine("msg value must be double-quoted");
    std::string out;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        char c = s[i];
        if (c == '"') throw MalformedLine("unescaped quote inside msg");
        if (c != '\\') {
            out.push_back(c);
            continue;
        }
        if (i + 2 >= s.size()) throw MalformedLine("dangling escape in msg");
        switch (s[++i]) {
            case '\\': out.push_back('\\'); break;
            case '"': out.push_back('"'); break;
            case 't': out.push_back('\t'); break;
            case 'n': out.push_back('\n'); break;
            case 'r': out.push_back('\r'); break;
            default: throw MalformedLine("unknown escape in msg");
        }
    }
    return out;
}

inline void require_msg(std::string_view msg) {
    if (trim(msg).empty()) throw MalformedLine("empty msg");
}

inline std::string two(int v) {
    std::string s(2, '0');
    s[0] = static_cast<char>('0' + v / 10 % 10);
    s[1] = static_cast<char>('0' + v % 10);
    return s;
}

}  // namespace detail

/// ISO-8601 UTC with microseconds: 2000-03-07T09:51:36.000000Z
inline std::string format_iso_timestamp(Timestamp ts) {
    using namespace std::chrono;
    auto day = floor<days>(ts);
    year_month_day ymd{day};
    hh_mm_ss hms{ts - day};
    std::string frac = std::to_string(hms.subseconds().count());
    frac.insert(0, 6 - frac.size(), '0');
    std::string year = std::to_string(static_cast<int>(ymd.year()));
    year.insert(0, year.size() < 4 ? 4 - year.size() : 0, '0');
    return year + "-" + detail::two(static_cast<int>(static_cast<unsigned>(ymd.month()))) + "-" +
           detail::two(static_cast<int>(static_cast<unsigned>(ymd.day()))) + "T" +
           detail::two(static_cast<int>(hms.hours().count())) + ":" +
           detail::two(static_cast<int>(hms.minutes().count())) + ":" +
           detail::two(static_cast<int>(hms.seconds().count())) + "." + frac + "Z";
}

inline Timestamp parse_iso_timestamp(std::string_view s) {
    using detail::expect_char;
    using detail::fixed_digits;
    constexpr std::string_view what = "timestamp";
    if (s.size() < 22 || s.back() != 'Z') throw MalformedLine("timestamp must look like YYYY-MM-DDTHH:MM:SS.ffffffZ");
    int y = fixed_digits(s, 0, 4, what);
    expect_char(s, 4, '-', what);
    int mo = fixed_digits(s, 5, 2, what);
    expect_char(s, 7, '-', what);
    int d = fixed_digits(s, 8, 2, what);
    expect_char(s, 10, 'T', what);
    int h = fixed_digits(s, 11, 2, what);
    expect_char(s, 13, ':', what);
    int mi = fixed_digits(s, 14, 2, what);
    expect_char(s, 16, ':', what);
    int sec = fixed_digits(s, 17, 2, what);
    long us = detail::fraction_micros(s, 19, s.size() - 1, what);
    return detail::make_timestamp(y, mo, d, h, mi, sec, us, what);
}

/// Snort fast timestamps carry no year; `base_year` fills it in.
inline Timestamp parse_fast_timestamp(std::string_view s, int base_year) {
    using detail::expect_char;
    using detail::fixed_digits;
    constexpr std::string_view what = "fast timestamp";
    if (s.size() < 16) throw MalformedLine("fast timestamp too short");
    int mo = fixed_digits(s, 0, 2, what);
    expect_char(s, 2, '/', what);
    int d = fixed_digits(s, 3, 2, what);
    expect_char(s, 5, '-', what);
    int h = fixed_digits(s, 6, 2, what);
    expect_char(s, 8, ':', what);
    int mi = fixed_digits(s, 9, 2, what);
    expect_char(s, 11, ':', what);
    int sec = fixed_digits(s, 12, 2, what);
    long us = detail::fraction_micros(s, 14, s.size(), what);
    return detail::make_timestamp(base_year, mo, d, h, mi, sec, us, what);
}

struct FastLineOptions {
    int base_year = 2000;
    std::string sensor = "snort";
};

inline RawAlert parse_fast_line(std::string_view line, const FastLineOptions& opts = {}) {
    line = detail::trim(line);
    RawAlert a;
    a.sensor = opts.sensor;

    auto sp = line.find(' ');
    if (sp == std::string_view::npos) throw MalformedLine("missing fields after timestamp");
    a.timestamp = parse_fast_timestamp(line.substr(0, sp), opts.base_year);
    std::string_view rest = line.substr(sp + 1);

    constexpr std::string_view marker = "[**] ";
    if (!rest.starts_with(marker)) throw MalformedLine("missing leading [**]");
    rest.remove_prefix(marker.size());

    if (!rest.starts_with("[")) throw MalformedLine("missing [gid:sid:rev]");
    auto close = rest.find(']');
    if (close == std::string_view::npos) throw MalformedLine("unterminated [gid:sid:rev]");
    {
        std::string_view ids = rest.substr(1, close - 1);
        int colons = 0;
        for (char c : ids) {
            if (c == ':') ++colons;
            else if (c < '0' || c > '9') throw MalformedLine("bad [gid:sid:rev]");
        }
        if (colons != 2) throw MalformedLine("bad [gid:sid:rev]");
    }
    rest = rest.substr(close + 1);

    auto msg_end = rest.find(" [**]");
    if (msg_end == std::string_view::npos) throw MalformedLine("missing trailing [**]");
    std::string_view msg = detail::trim(rest.substr(0, msg_end));
    detail::require_msg(msg);
    a.msg = std::string(msg);
    rest = detail::trim(rest.substr(msg_end + 5));

    // Optional [Classification: ...] and [Priority: N] groups.
    while (rest.starts_with("[")) {
        auto end = rest.find(']');
        if (end == std::string_view::npos) throw MalformedLine("unterminated bracket group");
        std::string_view group = rest.substr(1, end - 1);
        if (!group.starts_with("Classification:") && !group.starts_with("Priority:"))
            throw MalformedLine("unexpected bracket group '" + std::string(group) + "'");
        rest = detail::trim(rest.substr(end + 1));
    }

    if (!rest.starts_with("{")) throw MalformedLine("missing {PROTO}");
    auto pclose = rest.find('}');
    if (pclose == std::string_view::npos || pclose == 1) throw MalformedLine("bad {PROTO}");
    a.proto = std::string(rest.substr(1, pclose - 1));
    rest = detail::trim(rest.substr(pclose + 1));

    auto arrow = rest.find(" -> ");
    if (arrow == std::string_view::npos) throw MalformedLine("missing '->'");
    auto src = detail::parse_endpoint(detail::trim(rest.substr(0, arrow)));
    auto dst = detail::parse_endpoint(detail::trim(rest.substr(arrow + 4)));
    a.src_ip = src.ip;
    a.src_port = src.port;
    a.dst_ip = dst.ip;
    a.dst_port = dst.port;
    return a;
}

inline RawAlert parse_record_line(std::string_view line) {
    line = detail::trim(line);
    RawAlert a;
    bool seen[9] = {};
    constexpr std::string_view keys[9] = {"ts", "msg", "sip", "sport", "dip", "dport", "proto", "dgmlen", "sensor"};

    std::size_t pos = 0;
    while (pos <= line.size()) {
        auto tab = line.find('\t', pos);
        std::string_view field = line.substr(pos, tab == std::string_view::npos ? line.size() - pos : tab - pos);
        pos = tab == std::string_view::npos ? line.size() + 1 : tab + 1;
        if (field.empty()) throw MalformedLine("empty field");
        auto eq = field.find('=');
        if (eq == std::string_view::npos) throw MalformedLine("field without '=': " + std::string(field));
        std::string_view key = field.substr(0, eq);
        std::string_view value = field.substr(eq + 1);

        std::size_t k = 0;
        while (k < 9 && keys[k] != key) ++k;
        if (k == 9) throw UnknownField(std::string(key));
        if (seen[k]) throw MalformedLine("duplicate key " + std::string(key));
        seen[k] = true;

        switch (k) {
            case 0: a.timestamp = parse_iso_timestamp(value); break;
            case 1:
                a.msg = detail::unquote(value);
                detail::require_msg(a.msg);
                break;
            case 2: a.src_ip = IpAddress::from(value); break;
            case 3: a.src_port = detail::parse_port(value); break;
            case 4: a.dst_ip = IpAddress::from(value); break;
            case 5: a.dst_port = detail::parse_port(value); break;
            case 6: a.proto = std::string(value); break;
            case 7: {
                auto len = detail::parse_uint<std::uint32_t>(value, 0xffffffffu);
                if (!len) throw MalformedLine("invalid dgmlen");
                a.dgmlen = *len;
                break;
            }
            case 8: a.sensor = std::string(value); break;
        }
    }
    if (!seen[0]) throw MalformedLine("missing ts");
    if (!seen[1]) throw MalformedLine("missing msg");
    if (!seen[4]) throw MalformedLine("missing dip");
    if (seen[3] && !seen[2]) throw MalformedLine("sport without sip");
    return a;
}

/// Inverse of parse_record_line; the id is not part of the format.
inline std::string format_record_line(const RawAlert& a) {
    std::string out = "ts=" + format_iso_timestamp(a.timestamp) + "\tmsg=" + detail::quote(a.msg);
    if (a.src_ip) out += "\tsip=" + a.src_ip->str();
    if (a.src_port) out += "\tsport=" + std::to_string(*a.src_port);
    out += "\tdip=" + a.dst_ip.str();
    if (a.dst_port) out += "\tdport=" + std::to_string(*a.dst_port);
    if (!a.proto.empty()) out += "\tproto=" + a.proto;
    if (a.dgmlen) out += "\tdgmlen=" + std::to_string(*a.dgmlen);
    if (!a.sensor.empty()) out += "\tsensor=" + a.sensor;
    return out;
}

/// Renders a network alert as a snort fast line. Requires a source address.
inline std::string format_fast_line(const RawAlert& a, std::string_view sid = "1:1:1") {
    using namespace std::chrono;
    auto day = floor<days>(a.timestamp);
    year_month_day ymd{day};
    hh_mm_ss hms{a.timestamp - day};
    std::string frac = std::to_string(hms.subseconds().count());
    frac.insert(0, 6 - frac.size(), '0');
    auto endpoint = [](const IpAddress& ip, std::optional<std::uint16_t> port) {
        std::string s = ip.str();
        if (port) s += ":" + std::to_string(*port);
        return s;
    };
    return detail::two(static_cast<int>(static_cast<unsigned>(ymd.month()))) + "/" +
           detail::two(static_cast<int>(static_cast<unsigned>(ymd.day()))) + "-" +
           detail::two(static_cast<int>(hms.hours().count())) + ":" +
           detail::two(static_cast<int>(hms.minutes().count())) + ":" +
           detail::two(static_cast<int>(hms.seconds().count())) + "." + frac + " [**] [" +
           std::string(sid) + "] " + a.msg + " [**] {" + a.proto + "} " +
           endpoint(a.src_ip.value(), a.src_port) + " -> " + endpoint(a.dst_ip, a.dst_port);
}

struct Diagnostic {
    std::size_t line = 0;  // 1-based
    std::string reason;
};

struct IngestResult {
    std::vector<RawAlert> alerts;
    std::vector<Diagnostic> diagnostics;
};

struct IngestOptions {
    FastLineOptions fast;
    std::uint64_t first_id = 1;
};

/// Parses every line; malformed lines become diagnostics. Blank lines and
/// lines starting with '#' are ignored.
template <typename LineRange>
IngestResult ingest_lines(const LineRange& lines, InputFormat format, const IngestOptions& opts = {}) {
    IngestResult out;
    std::uint64_t next_id = opts.first_id;
    std::size_t lineno = 0;
    for (const auto& raw : lines) {
        ++lineno;
        std::string_view line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        try {
            RawAlert a = format == InputFormat::Fast ? parse_fast_line(line, opts.fast) : parse_record_line(line);
            a.id = next_id++;
            out.alerts.push_back(std::move(a));
        } catch (const Error& e) {
            out.diagnostics.push_back({lineno, e.what()});
        }
    }
    return out;
}

inline IngestResult ingest(std::istream& in, InputFormat format, const IngestOptions& opts = {}) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));
    return ingest_lines(lines, format, opts);
}

}  // namespace maac
