#include <algorithm>
#include <cstring>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <adaptkw/candidates.hpp>
#include <adaptkw/hash_embedder.hpp>
#include <adaptkw/ranker.hpp>
#include <adaptkw/zeroshot.hpp>

namespace {

using adaptkw::CandidatePhrase;
using adaptkw::CandidateSet;
using adaptkw::cosine_similarity;
using adaptkw::ScoredKeyword;
using adaptkw::SeedSet;
using adaptkw::Vec;

Vec random_unit(std::mt19937_64& rng, size_t d) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vec v(d);
    double n = 0.0;
    do {
        for (double& x : v) x = u(rng);
        n = adaptkw::norm2(v);
    } while (n < 1e-6);
    for (double& x : v) x /= n;
    return v;
}

TEST(SeedWeights, TakesMaxCosineClampedAtZero) {
    SeedSet seeds;
    seeds.phrases = {"s1", "s2"};
    seeds.embeddings = {{1.0, 0.0}, {0.0, -1.0}};
    const double inv_sqrt2 = 0.7071067811865475;
    Vec cand{inv_sqrt2, inv_sqrt2};
    // cos to s1 = 0.70710678, cos to s2 = -0.70710678 -> max is s1's
    EXPECT_NEAR(adaptkw::seed_similarity_weight(cand, seeds), inv_sqrt2, 1e-15);

    Vec anti{0.0, 1.0};  // s1: 0, s2: -1 -> clamped to 0
    EXPECT_EQ(adaptkw::seed_similarity_weight(anti, seeds), 0.0);
}

TEST(Blend, AlphaZeroIsBitExactIdentity) {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
        Vec e = random_unit(rng, 6), d = random_unit(rng, 6);
        double sw = (rng() % 1000) / 1000.0;
        Vec out = adaptkw::blend_toward_document(e, d, sw, 0.0);
        ASSERT_EQ(out.size(), e.size());
        for (size_t j = 0; j < e.size(); ++j)
            EXPECT_EQ(std::memcmp(&out[j], &e[j], sizeof(double)), 0);
    }
}

TEST(Blend, FullWeightIsBitExactDocument) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        Vec e = random_unit(rng, 6), d = random_unit(rng, 6);
        Vec out = adaptkw::blend_toward_document(e, d, 1.0, 1.0);
        for (size_t j = 0; j < d.size(); ++j)
            EXPECT_EQ(std::memcmp(&out[j], &d[j], sizeof(double)), 0);
    }
}

TEST(Blend, CosineToDocumentIsMonotoneInBlendWeight) {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 100; ++i) {
        Vec e = random_unit(rng, 8), d = random_unit(rng, 8);
        double prev = cosine_similarity(e, d);
        for (double t : {0.1, 0.25, 0.5, 0.75, 0.9, 0.99}) {
            Vec out = adaptkw::blend_toward_document(e, d, t, 1.0);
            double c = cosine_similarity(out, d);
            EXPECT_GE(c, prev - 1e-12);
            prev = c;
        }
    }
}

TEST(Blend, ValidatesDomains) {
    Vec e{1.0, 0.0}, d{0.0, 1.0};
    EXPECT_THROW(adaptkw::blend_toward_document(e, d, -0.1, 0.5),
                 adaptkw::ConfigError);
    EXPECT_THROW(adaptkw::blend_toward_document(e, d, 0.5, 1.5),
                 adaptkw::ConfigError);
    EXPECT_THROW(adaptkw::blend_toward_document(e, Vec{1.0}, 0.5, 0.5),
                 adaptkw::DimensionMismatch);
}

TEST(SeedSets, NormalizesAndDeduplicates) {
    adaptkw::HashEmbedder e(16, 4);
    auto seeds = adaptkw::make_seed_set({"Fishery", "fishery", "  HARVEST "},
                                        e);
    EXPECT_EQ(seeds.phrases,
              (std::vector<std::string>{"fishery", "harvest"}));
    EXPECT_EQ(seeds.embeddings.size(), 2u);
    EXPECT_THROW(adaptkw::make_seed_set({"", "   "}, e), adaptkw::EmptySeedSet);
}

TEST(SeedSets, LoadsFromFile) {
    std::string path = ::testing::TempDir() + "seeds.txt";
    {
        std::ofstream f(path);
        f << "# domain terms\nFishery\n\naqua culture # trailing\n";
    }
    auto words = adaptkw::load_seed_words(path);
    EXPECT_EQ(words, (std::vector<std::string>{"fishery", "aqua culture"}));

    std::string empty = ::testing::TempDir() + "seeds_empty.txt";
    {
        std::ofstream f(empty);
        f << "# nothing\n";
    }
    EXPECT_THROW(adaptkw::load_seed_words(empty), adaptkw::EmptySeedSet);
}

CandidateSet make_candidates(const std::vector<std::string>& surfaces) {
    CandidateSet out;
    for (const auto& s : surfaces) out.push_back(CandidatePhrase{s, 1});
    return out;
}

TEST(Ranker, SortsByScoreThenPhrase) {
    CandidateSet cands = make_candidates({"b", "a", "c"});
    Vec doc{1.0, 0.0};
    // "b" and "a" tie at cosine 1; "c" scores 0
    std::vector<Vec> embs{{2.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    auto ranked = adaptkw::rank_by_relevance(cands, embs, doc);
    ASSERT_EQ(ranked.size(), 3u);
    EXPECT_EQ(ranked[0].phrase, "a");
    EXPECT_EQ(ranked[1].phrase, "b");
    EXPECT_EQ(ranked[2].phrase, "c");
    EXPECT_DOUBLE_EQ(ranked[0].score, 1.0);

    auto top2 = adaptkw::take_top_k(ranked, 2);
    ASSERT_EQ(top2.size(), 2u);
    EXPECT_EQ(top2[1].phrase, "b");
    EXPECT_EQ(adaptkw::take_top_k(ranked, 10).size(), 3u);
}

// Independent greedy MMR used as the oracle.
std::vector<std::string> oracle_mmr(const CandidateSet& cands,
                                    const std::vector<Vec>& embs,
                                    const Vec& doc, size_t k, double lambda) {
    std::vector<std::string> picked_names;
    std::vector<size_t> picked;
    std::vector<bool> used(cands.size(), false);
    while (picked.size() < std::min(k, cands.size())) {
        double best_score = 0.0;
        size_t best = cands.size();
        for (size_t i = 0; i < cands.size(); ++i) {
            if (used[i]) continue;
            double rel = cosine_similarity(embs[i], doc);
            double score;
            if (picked.empty()) {
                score = rel;
            } else {
                double worst = -2.0;
                for (size_t j : picked)
                    worst = std::max(worst, cosine_similarity(embs[i], embs[j]));
                score = (1.0 - lambda) * rel - lambda * worst;
            }
            if (best == cands.size() || score > best_score ||
                (score == best_score &&
                 cands[i].surface < cands[best].surface)) {
                best = i;
                best_score = score;
            }
        }
        used[best] = true;
        picked.push_back(best);
        picked_names.push_back(cands[best].surface);
    }
    return picked_names;
}

TEST(Mmr, MatchesGreedyOracleOnRandomInstances) {
    std::mt19937_64 rng(606);
    for (int iter = 0; iter < 50; ++iter) {
        size_t n = 2 + rng() % 10;
        size_t k = 1 + rng() % 6;
        double lambda = (rng() % 100) / 100.0;
        CandidateSet cands;
        std::vector<Vec> embs;
        Vec doc = random_unit(rng, 8);
        for (size_t i = 0; i < n; ++i) {
            cands.push_back(CandidatePhrase{"w" + std::to_string(i), 1});
            embs.push_back(random_unit(rng, 8));
        }
        auto got = adaptkw::mmr_select(cands, embs, doc, k, lambda);
        auto want = oracle_mmr(cands, embs, doc, k, lambda);
        ASSERT_EQ(got.size(), want.size());
        for (size_t i = 0; i < got.size(); ++i)
            EXPECT_EQ(got[i].phrase, want[i]) << "iter " << iter;
        // reported scores are the plain relevance cosines
        for (const auto& kw : got) {
            size_t idx = 0;
            while (cands[idx].surface != kw.phrase) ++idx;
            EXPECT_DOUBLE_EQ(kw.score, cosine_similarity(embs[idx], doc));
        }
    }
}

TEST(Mmr, ZeroDiversityEqualsPlainTopK) {
    std::mt19937_64 rng(707);
    for (int iter = 0; iter < 30; ++iter) {
        size_t n = 2 + rng() % 10;
        size_t k = 1 + rng() % 6;
        CandidateSet cands;
        std::vector<Vec> embs;
        Vec doc = random_unit(rng, 8);
        for (size_t i = 0; i < n; ++i) {
            cands.push_back(CandidatePhrase{"w" + std::to_string(i), 1});
            embs.push_back(random_unit(rng, 8));
        }
        auto mmr = adaptkw::mmr_select(cands, embs, doc, k, 0.0);
        auto plain = adaptkw::take_top_k(
            adaptkw::rank_by_relevance(cands, embs, doc), k);
        ASSERT_EQ(mmr.size(), plain.size());
        for (size_t i = 0; i < mmr.size(); ++i) {
            EXPECT_EQ(mmr[i].phrase, plain[i].phrase);
            EXPECT_DOUBLE_EQ(mmr[i].score, plain[i].score);
        }
    }
}

TEST(Mmr, DiversityAvoidsNearDuplicates) {
    // two nearly identical top candidates; with strong diversity the second
    // pick must be the distinct one
    CandidateSet cands = make_candidates({"dup1", "dup2", "other"});
    std::vector<Vec> embs{{1.0, 0.01}, {1.0, 0.011}, {0.5, 0.8}};
    Vec doc{1.0, 0.0};
    auto picked = adaptkw::mmr_select(cands, embs, doc, 2, 0.9);
    ASSERT_EQ(picked.size(), 2u);
    EXPECT_EQ(picked[0].phrase, "dup1");
    EXPECT_EQ(picked[1].phrase, "other");
}

}  // namespace
