#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <adaptkw/corpus.hpp>

namespace {

using adaptkw::LabeledCorpus;
using adaptkw::LabeledEntry;
using adaptkw::ProtocolConfig;

std::string write_lines(const std::string& name,
                        const std::vector<std::string>& lines) {
    std::string path = ::testing::TempDir() + name;
    std::ofstream f(path);
    for (const auto& l : lines) f << l << "\n";
    return path;
}

TEST(CorpusLoad, ParsesValidJsonl) {
    auto path = write_lines(
        "corpus_ok.jsonl",
        {R"({"id": "d1", "text": "Solar power rocks", "keywords": ["Solar", "solar", "  POWER "]})",
         "",
         R"({"id": "d2", "text": "wind", "keywords": ["wind energy"]})"});
    auto corpus = adaptkw::load_corpus(path);
    ASSERT_EQ(corpus.entries.size(), 2u);
    EXPECT_EQ(corpus.entries[0].document.id, "d1");
    // normalized and deduplicated, first occurrence kept
    EXPECT_EQ(corpus.entries[0].gold,
              (std::vector<std::string>{"solar", "power"}));
    EXPECT_EQ(corpus.entries[1].gold,
              (std::vector<std::string>{"wind energy"}));
}

TEST(CorpusLoad, ReportsLineNumbersOnErrors) {
    auto path = write_lines(
        "corpus_noname.jsonl",
        {R"({"id": "d1", "text": "x", "keywords": ["k"]})",
         R"({"id": "d2", "text": "y"})"});
    try {
        adaptkw::load_corpus(path);
        FAIL() << "expected ParseError";
    } catch (const adaptkw::ParseError& e) {
        EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos)
            << e.what();
    }
}

TEST(CorpusLoad, RejectsDuplicateIdsEmptyGoldAndEmptyFiles) {
    auto dup = write_lines(
        "corpus_dup.jsonl",
        {R"({"id": "d1", "text": "x", "keywords": ["k"]})",
         R"({"id": "d1", "text": "y", "keywords": ["k"]})"});
    EXPECT_THROW(adaptkw::load_corpus(dup), adaptkw::DuplicateDocumentId);

    auto empty_gold = write_lines(
        "corpus_nogold.jsonl",
        {R"({"id": "d1", "text": "x", "keywords": ["  "]})"});
    EXPECT_THROW(adaptkw::load_corpus(empty_gold), adaptkw::ParseError);

    auto empty = write_lines("corpus_empty.jsonl", {"", ""});
    EXPECT_THROW(adaptkw::load_corpus(empty), adaptkw::EmptyCorpus);

    EXPECT_THROW(adaptkw::load_corpus("/nonexistent/corpus.jsonl"),
                 adaptkw::ParseError);
}

LabeledCorpus make_corpus(const std::vector<std::vector<std::string>>& golds) {
    LabeledCorpus corpus;
    corpus.name = "test";
    for (size_t i = 0; i < golds.size(); ++i) {
        LabeledEntry e;
        // ids deliberately sort in insertion order (d00, d01, ...)
        char buf[8];
        std::snprintf(buf, sizeof(buf), "d%02zu", i);
        e.document.id = buf;
        e.document.text = "text " + std::to_string(i);
        e.gold = golds[i];
        corpus.entries.push_back(e);
    }
    return corpus;
}

TEST(Popular, AppliesStrictThreshold) {
    // N=10, p=0.10: df must exceed 1, so df=2 is in and df=1 is out
    std::vector<std::vector<std::string>> golds(10);
    golds[0] = {"common", "rare"};
    golds[1] = {"common"};
    for (size_t i = 2; i < 10; ++i) golds[i] = {"filler" + std::to_string(i)};
    auto corpus = make_corpus(golds);
    auto popular = adaptkw::popular_keywords(corpus, ProtocolConfig{0.10});
    ASSERT_EQ(popular.size(), 1u);
    EXPECT_EQ(popular[0].keyword, "common");
    EXPECT_EQ(popular[0].doc_frequency, 2u);
}

TEST(Popular, OrdersByFrequencyThenKeyword) {
    std::vector<std::vector<std::string>> golds = {
        {"beta", "alpha", "gamma"},
        {"beta", "alpha"},
        {"beta", "gamma"},
        {"beta"},
    };
    auto corpus = make_corpus(golds);
    auto popular = adaptkw::popular_keywords(corpus, ProtocolConfig{0.25});
    ASSERT_EQ(popular.size(), 3u);  // threshold: df > 1
    EXPECT_EQ(popular[0].keyword, "beta");   // df 4
    EXPECT_EQ(popular[1].keyword, "alpha");  // df 2, ties with gamma
    EXPECT_EQ(popular[2].keyword, "gamma");  // df 2
}

TEST(Selection, RanksByPopularCoverage) {
    std::vector<std::vector<std::string>> golds = {
        {"a"},             // covers 1
        {"a", "b", "c"},   // covers 3
        {"x"},             // covers 0
        {"a", "b"},        // covers 2
    };
    auto corpus = make_corpus(golds);
    auto sel = adaptkw::select_fewshot_documents(corpus, {"a", "b", "c"},
                                                 ProtocolConfig{0.40});
    // budget = ceil(0.4*4) = 2 -> best coverage docs d01 (3) then d03 (2)
    ASSERT_EQ(sel.selected.size(), 2u);
    EXPECT_EQ(corpus.entries[sel.selected[0]].document.id, "d01");
    EXPECT_EQ(corpus.entries[sel.selected[1]].document.id, "d03");
    // RC is the full gold set of the selected document
    EXPECT_EQ(sel.pairs[0].relevant_phrases,
              (std::vector<std::string>{"a", "b", "c"}));
}

TEST(Selection, EmptyPopularFallsBackToIdOrder) {
    std::vector<std::vector<std::string>> golds = {
        {"k0"}, {"k1"}, {"k2"}, {"k3"}, {"k4"}};
    auto corpus = make_corpus(golds);
    auto sel = adaptkw::select_fewshot_documents(corpus, {},
                                                 ProtocolConfig{0.40});
    ASSERT_EQ(sel.selected.size(), 2u);
    EXPECT_EQ(corpus.entries[sel.selected[0]].document.id, "d00");
    EXPECT_EQ(corpus.entries[sel.selected[1]].document.id, "d01");
}

TEST(Selection, HeldoutIsComplementInCorpusOrder) {
    std::vector<std::vector<std::string>> golds(6, {"k"});
    auto corpus = make_corpus(golds);
    auto sel = adaptkw::select_fewshot_documents(corpus, {"k"},
                                                 ProtocolConfig{0.34});
    auto heldout = adaptkw::heldout_split(corpus, sel.selected);
    EXPECT_EQ(sel.selected.size() + heldout.size(), corpus.entries.size());
    std::set<size_t> all(heldout.begin(), heldout.end());
    for (size_t idx : sel.selected) EXPECT_FALSE(all.contains(idx));
    EXPECT_TRUE(std::is_sorted(heldout.begin(), heldout.end()));
}

TEST(AutoSeeds, MirrorPopularKeywords) {
    std::vector<std::vector<std::string>> golds = {
        {"fishery", "harvest"}, {"fishery"}, {"fishery", "harvest"}, {"x"}};
    auto corpus = make_corpus(golds);
    auto seeds = adaptkw::auto_seed_words(corpus, ProtocolConfig{0.30});
    EXPECT_EQ(seeds, (std::vector<std::string>{"fishery", "harvest"}));

    std::vector<std::vector<std::string>> unique_golds = {
        {"a"}, {"b"}, {"c"}, {"d"}};
    EXPECT_THROW(
        adaptkw::auto_seed_words(make_corpus(unique_golds), ProtocolConfig{0.30}),
        adaptkw::EmptySeedSet);
}

TEST(Protocol, ValidatesP) {
    EXPECT_THROW(ProtocolConfig{0.0}.validate(), adaptkw::ConfigError);
    EXPECT_THROW(ProtocolConfig{1.0}.validate(), adaptkw::ConfigError);
    EXPECT_THROW(ProtocolConfig{-0.1}.validate(), adaptkw::ConfigError);
    ProtocolConfig{0.5}.validate();
}

// Randomized check against brute-force oracles, exercising N <= 12 corpora
// with p drawn from {k/100}. The budget oracle uses integer arithmetic, so
// no floating-point ceil is trusted anywhere in the expectation.
TEST(Protocol, MatchesBruteForceOraclesOnRandomCorpora) {
    std::mt19937_64 rng(99);
    const std::vector<std::string> pool = {"k0", "k1", "k2", "k3", "k4", "k5"};
    for (int iter = 0; iter < 20; ++iter) {
        size_t n = 1 + rng() % 12;
        std::vector<std::vector<std::string>> golds(n);
        for (auto& g : golds) {
            size_t m = 1 + rng() % 4;
            std::set<std::string> s;
            while (s.size() < m) s.insert(pool[rng() % pool.size()]);
            g.assign(s.begin(), s.end());
        }
        auto corpus = make_corpus(golds);
        uint64_t p_hundredths = 1 + rng() % 99;
        ProtocolConfig cfg{static_cast<double>(p_hundredths) / 100.0};

        // --- popularity oracle: recount and re-apply the strict threshold
        std::map<std::string, size_t> df;
        for (const auto& e : corpus.entries)
            for (const auto& kw : e.gold) ++df[kw];
        std::vector<adaptkw::PopularKeyword> want;
        for (const auto& [kw, count] : df)
            if (100 * count > p_hundredths * n)  // integer-exact strict test
                want.push_back({kw, count});
        std::sort(want.begin(), want.end(), [](const auto& a, const auto& b) {
            if (a.doc_frequency != b.doc_frequency)
                return a.doc_frequency > b.doc_frequency;
            return a.keyword < b.keyword;
        });
        auto got = adaptkw::popular_keywords(corpus, cfg);
        ASSERT_EQ(got.size(), want.size()) << "iter " << iter;
        for (size_t i = 0; i < got.size(); ++i) {
            EXPECT_EQ(got[i].keyword, want[i].keyword);
            EXPECT_EQ(got[i].doc_frequency, want[i].doc_frequency);
        }

        // --- budget oracle: ceil(p*N) over exact integers
        uint64_t budget = (p_hundredths * n + 99) / 100;
        if (budget == 0) budget = 1;
        std::vector<std::string> popular_words;
        for (const auto& pk : got) popular_words.push_back(pk.keyword);
        auto sel = adaptkw::select_fewshot_documents(corpus, popular_words, cfg);
        EXPECT_EQ(sel.selected.size(), std::min<uint64_t>(budget, n))
            << "iter " << iter << " p=" << p_hundredths << " n=" << n;

        // --- selection oracle: exhaustive coverage ranking
        std::vector<std::pair<size_t, size_t>> ranked;
        for (size_t i = 0; i < n; ++i) {
            size_t cov = 0;
            for (const auto& kw : golds[i])
                cov += std::count(popular_words.begin(), popular_words.end(),
                                  kw) > 0;
            ranked.push_back({cov, i});
        }
        std::stable_sort(ranked.begin(), ranked.end(),
                         [&](const auto& a, const auto& b) {
                             if (a.first != b.first) return a.first > b.first;
                             return corpus.entries[a.second].document.id <
                                    corpus.entries[b.second].document.id;
                         });
        for (size_t i = 0; i < sel.selected.size(); ++i)
            EXPECT_EQ(sel.selected[i], ranked[i].second) << "iter " << iter;
    }
}

}  // namespace
