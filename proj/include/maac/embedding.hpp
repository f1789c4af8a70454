#pragma once

// Training-free msg embedding: signed feature hashing of word and character
// trigram counts. Downstream code only sees the Embedder interface, so a learned
// model can replace HashingEmbedder without other changes.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "maac/alert.hpp"

namespace maac {

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t a, std::size_t b)
        : Error("vector dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

struct Token {
    enum class Kind : std::uint8_t { Word, Trigram };
    Kind kind;
    std::string text;

    friend bool operator==(const Token&, const Token&) = default;
    friend auto operator<=>(const Token&, const Token&) = default;
};

/// Lowercased alphanumeric words, followed by the character trigrams of each
/// word (trigrams never span a word boundary).
inline std::vector<Token> tokenize(std::string_view msg) {
    std::vector<std::string> words;
    std::string cur;
    for (char c : msg) {
        auto uc = static_cast<unsigned char>(c);
        if (std::isalnum(uc)) {
            cur.push_back(static_cast<char>(std::tolower(uc)));
        } else if (!cur.empty()) {
            words.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) words.push_back(std::move(cur));

    std::vector<Token> tokens;
    for (const auto& w : words) tokens.push_back({Token::Kind::Word, w});
    for (const auto& w : words)
        for (std::size_t i = 0; i + 3 <= w.size(); ++i) tokens.push_back({Token::Kind::Trigram, w.substr(i, 3)});
    return tokens;
}

class MsgVector {
public:
    MsgVector() = default;
    explicit MsgVector(std::vector<double> values) : values_(std::move(values)) {
        double sq = 0.0;
        for (double v : values_) sq += v * v;
        norm_ = std::sqrt(sq);
    }

    std::size_t dimension() const noexcept { return values_.size(); }
    const std::vector<double>& values() const noexcept { return values_; }
    double norm() const noexcept { return norm_; }

    friend bool operator==(const MsgVector&, const MsgVector&) = default;

private:
    std::vector<double> values_;
    double norm_ = 0.0;
};

/// Cosine similarity, clamped to [-1, 1]. Zero vectors have similarity 0.
inline double similarity(const MsgVector& a, const MsgVector& b) {
    if (a.dimension() != b.dimension()) throw DimensionMismatch(a.dimension(), b.dimension());
    if (a.norm() == 0.0 || b.norm() == 0.0) return 0.0;
    double dot = 0.0;
    const auto& av = a.values();
    const auto& bv = b.values();
    for (std::size_t i = 0; i < av.size(); ++i) dot += av[i] * bv[i];
    return std::clamp(dot / (a.norm() * b.norm()), -1.0, 1.0);
}

class Embedder {
public:
    virtual ~Embedder() = default;
    virtual std::size_t dimension() const noexcept = 0;
    virtual MsgVector embed(std::string_view msg) const = 0;
};

class HashingEmbedder final : public Embedder {
public:
    static constexpr std::size_t kDefaultDimension = 256;

    explicit HashingEmbedder(std::size_t dimension = kDefaultDimension) : dimension_(dimension) {
        if (dimension_ == 0) throw Error("embedding dimension must be positive");
    }

    std::size_t dimension() const noexcept override { return dimension_; }

    MsgVector embed(std::string_view msg) const override {
        std::vector<double> v(dimension_, 0.0);
        for (const auto& t : tokenize(msg)) {
            std::uint64_t h = hash(t);
            v[h % dimension_] += (h >> 63) ? -1.0 : 1.0;
        }
        return MsgVector(std::move(v));
    }

    // FNV-1a over (kind, text), finalized with the splitmix64 mixer so that the
    // bucket and sign bits are well spread.
    static std::uint64_t hash(const Token& t) noexcept {
        std::uint64_t h = 0xcbf29ce484222325ull;
        auto step = [&h](unsigned char c) {
            h ^= c;
            h *= 0x100000001b3ull;
        };
        step(static_cast<unsigned char>(t.kind));
        for (char c : t.text) step(static_cast<unsigned char>(c));
        h ^= h >> 30;
        h *= 0xbf58476d1ce4e5b9ull;
        h ^= h >> 27;
        h *= 0x94d049bb133111ebull;
        h ^= h >> 31;
        return h;
    }

private:
    std::size_t dimension_;
};

}  // namespace maac
