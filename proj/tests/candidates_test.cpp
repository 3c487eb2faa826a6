#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include <gtest/gtest.h>

#include <adaptkw/candidates.hpp>

namespace {

using adaptkw::CandidatePhrase;
using adaptkw::CandidateSet;
using adaptkw::Document;
using adaptkw::extract_candidates;
using adaptkw::NgramRange;
using adaptkw::StopwordSet;

// Straight-line re-enumeration used as the oracle: build every n-gram by
// hand from the token list, apply the boundary rule, dedup keeping first.
CandidateSet oracle_candidates(const std::vector<std::string>& tokens,
                               const NgramRange& range,
                               const StopwordSet& stopwords) {
    CandidateSet out;
    std::unordered_set<std::string> seen;
    for (size_t n = range.n_ini; n <= range.n_fin; ++n) {
        if (tokens.size() < n) continue;
        for (size_t start = 0; start + n <= tokens.size(); ++start) {
            if (stopwords.count(tokens[start]) ||
                stopwords.count(tokens[start + n - 1]))
                continue;
            std::string phrase;
            for (size_t j = 0; j < n; ++j) {
                if (j) phrase += ' ';
                phrase += tokens[start + j];
            }
            if (seen.insert(phrase).second)
                out.push_back(CandidatePhrase{phrase, n});
        }
    }
    return out;
}

TEST(Candidates, UnigramsFromSimpleSentence) {
    Document doc{"d", "Solar power beats solar panels"};
    auto got = extract_candidates(doc, NgramRange{1, 1}, {});
    ASSERT_EQ(got.size(), 4u);  // "solar" deduplicated
    EXPECT_EQ(got[0].surface, "solar");
    EXPECT_EQ(got[1].surface, "power");
    EXPECT_EQ(got[2].surface, "beats");
    EXPECT_EQ(got[3].surface, "panels");
}

TEST(Candidates, EnumeratesShorterNgramsFirst) {
    Document doc{"d", "a b c"};
    auto got = extract_candidates(doc, NgramRange{1, 2}, {});
    std::vector<std::string> surfaces;
    for (const auto& c : got) surfaces.push_back(c.surface);
    EXPECT_EQ(surfaces,
              (std::vector<std::string>{"a", "b", "c", "a b", "b c"}));
    EXPECT_EQ(got[3].token_count, 2u);
}

TEST(Candidates, RejectsBoundaryStopwordsKeepsInterior) {
    Document doc{"d", "state of the art design"};
    StopwordSet stop{"of", "the"};
    auto got = extract_candidates(doc, NgramRange{1, 3}, stop);
    std::unordered_set<std::string> surfaces;
    for (const auto& c : got) surfaces.insert(c.surface);
    EXPECT_FALSE(surfaces.contains("of"));
    EXPECT_FALSE(surfaces.contains("state of"));
    EXPECT_FALSE(surfaces.contains("the art design"));
    EXPECT_TRUE(surfaces.contains("state"));
    EXPECT_TRUE(surfaces.contains("art design"));
    EXPECT_FALSE(surfaces.contains("state of the"));
    EXPECT_FALSE(surfaces.contains("of the art"));
}

TEST(Candidates, InteriorStopwordIsAllowed) {
    Document doc{"d", "head of state"};
    StopwordSet stop{"of"};
    auto got = extract_candidates(doc, NgramRange{1, 3}, stop);
    std::unordered_set<std::string> surfaces;
    for (const auto& c : got) surfaces.insert(c.surface);
    EXPECT_TRUE(surfaces.contains("head of state"));
    EXPECT_FALSE(surfaces.contains("head of"));
    EXPECT_FALSE(surfaces.contains("of state"));
    EXPECT_FALSE(surfaces.contains("of"));
}

TEST(Candidates, EmptyInputsGiveEmptySets) {
    EXPECT_TRUE(extract_candidates(Document{"d", ""}, NgramRange{1, 2}, {}).empty());
    EXPECT_TRUE(extract_candidates(Document{"d", "?!"}, NgramRange{1, 1}, {}).empty());
    StopwordSet all{"a", "b"};
    EXPECT_TRUE(extract_candidates(Document{"d", "a b"}, NgramRange{1, 2}, all).empty());
}

TEST(Candidates, InvalidRangeThrows) {
    EXPECT_THROW(NgramRange({2, 1}).validate(), adaptkw::ConfigError);
    EXPECT_THROW(NgramRange({0, 1}).validate(), adaptkw::ConfigError);
}

TEST(Candidates, MatchesOracleOnRandomTexts) {
    std::mt19937 rng(4242);
    const std::vector<std::string> pool = {"alpha", "beta",  "gamma", "delta",
                                           "eps",   "zeta",  "eta",   "theta",
                                           "the",   "of",    "and"};
    for (int iter = 0; iter < 60; ++iter) {
        size_t len = rng() % 14;
        std::vector<std::string> tokens;
        std::string text;
        for (size_t i = 0; i < len; ++i) {
            const std::string& w = pool[rng() % pool.size()];
            tokens.push_back(w);
            if (!text.empty()) text += ' ';
            text += w;
        }
        StopwordSet stop;
        if (rng() % 2) stop = {"the", "of", "and"};
        size_t lo = 1 + rng() % 2, hi = lo + rng() % 3;
        NgramRange range{lo, hi};

        auto got = extract_candidates(Document{"d", text}, range, stop);
        auto want = oracle_candidates(tokens, range, stop);
        ASSERT_EQ(got.size(), want.size()) << "text: " << text;
        for (size_t i = 0; i < got.size(); ++i) {
            EXPECT_EQ(got[i].surface, want[i].surface);
            EXPECT_EQ(got[i].token_count, want[i].token_count);
        }
    }
}

}  // namespace
