#include <gtest/gtest.h>

#include <random>
#include <set>

#include "support.hpp"

using namespace maac;
using maac::testing::oracle_similarity;

namespace {

std::vector<std::string> texts(const std::vector<Token>& ts, Token::Kind kind) {
    std::vector<std::string> out;
    for (const auto& t : ts)
        if (t.kind == kind) out.push_back(t.text);
    return out;
}

}  // namespace

TEST(Tokenize, WordsThenTrigrams) {
    auto ts = tokenize("ICMP PING");
    EXPECT_EQ(texts(ts, Token::Kind::Word), (std::vector<std::string>{"icmp", "ping"}));
    EXPECT_EQ(texts(ts, Token::Kind::Trigram), (std::vector<std::string>{"icm", "cmp", "pin", "ing"}));
}

TEST(Tokenize, CaseFolding) { EXPECT_EQ(tokenize("SQL Injection Attempt"), tokenize("sql injection attempt")); }

TEST(Tokenize, SingleCharacter) {
    auto ts = tokenize("x");
    ASSERT_EQ(ts.size(), 1u);
    EXPECT_EQ(ts[0], (Token{Token::Kind::Word, "x"}));
}

TEST(Tokenize, PunctuationSplits) {
    EXPECT_EQ(texts(tokenize("WEB-MISC  /cgi-bin"), Token::Kind::Word),
              (std::vector<std::string>{"web", "misc", "cgi", "bin"}));
    EXPECT_TRUE(tokenize(" -- ").empty());
}

TEST(Embedding, Deterministic) {
    HashingEmbedder e;
    auto a = e.embed("RPC sadmind UDP PING");
    auto b = HashingEmbedder().embed("RPC sadmind UDP PING");
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.dimension(), 256u);
}

TEST(Embedding, SelfSimilarityIsOne) {
    HashingEmbedder e;
    for (const char* m : {"ICMP PING", "x", "DDOS mstream client to handler"})
        EXPECT_NEAR(similarity(e.embed(m), e.embed(m)), 1.0, 1e-9) << m;
}

TEST(Embedding, OneHotVectorsAreOrthogonal) {
    std::vector<double> a(8, 0.0), b(8, 0.0);
    a[1] = 1.0;
    b[5] = 3.0;
    EXPECT_EQ(similarity(MsgVector(a), MsgVector(b)), 0.0);
}

TEST(Embedding, ZeroVectorAndDimensionMismatch) {
    MsgVector zero(std::vector<double>(4, 0.0));
    MsgVector one(std::vector<double>{1, 0, 0, 0});
    EXPECT_EQ(similarity(zero, one), 0.0);
    EXPECT_THROW(similarity(one, MsgVector(std::vector<double>{1, 0})), DimensionMismatch);
    EXPECT_THROW(HashingEmbedder(0), Error);
}

TEST(Embedding, SymmetricOnRandomPairs) {
    HashingEmbedder e;
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        auto a = maac::testing::fuzz_msg(rng), b = maac::testing::fuzz_msg(rng);
        EXPECT_EQ(similarity(e.embed(a), e.embed(b)), similarity(e.embed(b), e.embed(a)));
    }
}

TEST(Embedding, DisjointTokensNearZero) {
    HashingEmbedder e;
    const std::string a = "ICMP PING", b = "DDOS mstream client to handler";
    EXPECT_EQ(oracle_similarity(a, b), 0.0);
    EXPECT_LT(std::abs(similarity(e.embed(a), e.embed(b))), 0.15);
}

TEST(Embedding, SadmindOrderingAgreesWithOracle) {
    HashingEmbedder e;
    const std::string probe = "RPC sadmind UDP PING";
    const std::string exploit = "RPC sadmind query with root credentials attempt UDP";
    const std::string ping = "ICMP PING";
    double hashed_pe = similarity(e.embed(probe), e.embed(exploit));
    double hashed_pp = similarity(e.embed(probe), e.embed(ping));
    double hashed_ep = similarity(e.embed(exploit), e.embed(ping));
    double oracle_pe = oracle_similarity(probe, exploit);
    double oracle_pp = oracle_similarity(probe, ping);
    double oracle_ep = oracle_similarity(exploit, ping);
    ASSERT_GT(oracle_pe, oracle_pp);
    ASSERT_GT(oracle_pe, oracle_ep);
    EXPECT_GT(hashed_pe, hashed_pp);
    EXPECT_GT(hashed_pe, hashed_ep);
}

TEST(Embedding, TracksOracleOnRandomPairs) {
    // Without a bucket collision among the tokens of the pair the hashed
    // cosine is the exact one; collisions only perturb it, modestly on average.
    HashingEmbedder e;
    std::mt19937_64 rng(11);
    double total = 0.0;
    int exact_pairs = 0;
    const int n = 500;
    for (int i = 0; i < n; ++i) {
        auto a = maac::testing::fuzz_msg(rng), b = maac::testing::fuzz_msg(rng);
        double hashed = similarity(e.embed(a), e.embed(b));
        double exact = oracle_similarity(a, b);
        total += std::abs(hashed - exact);

        std::set<Token> tokens;
        for (const auto& t : tokenize(a)) tokens.insert(t);
        for (const auto& t : tokenize(b)) tokens.insert(t);
        std::set<std::size_t> buckets;
        for (const auto& t : tokens) buckets.insert(HashingEmbedder::hash(t) % e.dimension());
        if (buckets.size() == tokens.size()) {
            ++exact_pairs;
            EXPECT_NEAR(hashed, exact, 1e-12) << a << " | " << b;
        }
    }
    EXPECT_LT(total / n, 0.05);
    EXPECT_GT(exact_pairs, 50);
}

TEST(Embedding, WiderVectorsCollideLess) {
    // With a very wide vector the hashed cosine equals the exact one for these
    // short msgs (no bucket collisions).
    HashingEmbedder wide(1 << 20);
    const std::string a = "RPC sadmind UDP PING", b = "RPC sadmind query with root credentials attempt UDP";
    EXPECT_NEAR(similarity(wide.embed(a), wide.embed(b)), oracle_similarity(a, b), 1e-12);
}
