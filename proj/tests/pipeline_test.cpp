#include <algorithm>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include <gtest/gtest.h>

#include <adaptkw/adaptkw.hpp>

namespace {

using adaptkw::Document;
using adaptkw::HashEmbedder;
using adaptkw::LabeledCorpus;
using adaptkw::LabeledEntry;
using adaptkw::Mode;
using adaptkw::PipelineConfig;
using adaptkw::Vec;

TEST(Modes, TokensRoundTrip) {
    for (Mode m : {Mode::kBenchmark, Mode::kZeroShot, Mode::kFewShot,
                   Mode::kZeroFewShot})
        EXPECT_EQ(adaptkw::parse_mode(adaptkw::mode_token(m)), m);
    EXPECT_THROW(adaptkw::parse_mode("fewshot"), adaptkw::ConfigError);
}

// Benchmark pipeline re-implemented as straight-line code on top of the
// same tokenizer and embedder, used as the end-to-end oracle.
std::vector<std::pair<std::string, double>> oracle_benchmark(
    const std::string& text, HashEmbedder& embedder, size_t k) {
    std::vector<std::string> tokens = adaptkw::tokenize(text);
    std::vector<std::string> unique;
    std::unordered_set<std::string> seen;
    for (const auto& t : tokens)
        if (seen.insert(t).second) unique.push_back(t);

    Vec doc = embedder.embed_one(text);
    std::vector<std::pair<std::string, double>> scored;
    for (const auto& t : unique)
        scored.push_back({t, adaptkw::cosine_similarity(embedder.embed_one(t), doc)});
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (scored.size() > k) scored.resize(k);
    return scored;
}

TEST(Pipeline, BenchmarkMatchesEndToEndOracle) {
    HashEmbedder embedder(48, 21);
    PipelineConfig cfg;
    cfg.top_k = 5;
    const std::string texts[] = {
        "Solar power beats coal power on cost and emissions today",
        "Fisheries management requires quota systems and habitat protection",
        "The quick brown fox jumps over the lazy dog",
        "wind wind wind turbine turbine blade",
        "one",
    };
    for (const std::string& text : texts) {
        auto got = adaptkw::extract_keywords(Document{"d", text}, embedder,
                                             cfg, Mode::kBenchmark);
        auto want = oracle_benchmark(text, embedder, cfg.top_k);
        ASSERT_EQ(got.size(), want.size()) << text;
        for (size_t i = 0; i < got.size(); ++i) {
            EXPECT_EQ(got[i].phrase, want[i].first) << text;
            EXPECT_NEAR(got[i].score, want[i].second, 1e-12);
        }
    }
}

TEST(Pipeline, FreshAdapterLeavesBenchmarkRankingUnchanged) {
    HashEmbedder embedder(32, 4);
    auto adapter = adaptkw::init_adapter(32, 77);
    PipelineConfig cfg;
    cfg.top_k = 8;
    cfg.ngrams = adaptkw::NgramRange{1, 2};
    std::mt19937_64 rng(11);
    const std::vector<std::string> pool = {
        "solar", "wind",  "hydro",   "coal",   "gas",    "storage",
        "grid",  "power", "turbine", "panel",  "quota",  "policy"};
    for (int iter = 0; iter < 20; ++iter) {
        std::string text;
        for (int j = 0; j < 12; ++j) {
            if (!text.empty()) text += ' ';
            text += pool[rng() % pool.size()];
        }
        Document doc{"d" + std::to_string(iter), text};
        auto plain = adaptkw::extract_keywords(doc, embedder, cfg,
                                               Mode::kBenchmark);
        auto adapted = adaptkw::extract_keywords(doc, embedder, cfg,
                                                 Mode::kFewShot, &adapter);
        ASSERT_EQ(plain.size(), adapted.size());
        for (size_t i = 0; i < plain.size(); ++i) {
            EXPECT_EQ(plain[i].phrase, adapted[i].phrase);
            EXPECT_NEAR(plain[i].score, adapted[i].score, 1e-9);
        }
    }
}

TEST(Pipeline, CombinedModeBlendsAdapterOutput) {
    // hand construction: one candidate, weights that move it, and a seed
    // equal to the candidate so sw = 1
    const size_t d = 2;
    adaptkw::AdapterWeights w;
    w.d = d;
    w.w_q = w.w_k = w.w_v = w.w_o = adaptkw::Matrix(d, d);
    for (size_t i = 0; i < d; ++i) {
        w.w_q.at(i, i) = 1.0;
        w.w_k.at(i, i) = 1.0;
        w.w_v.at(i, i) = 1.0;
        w.w_o.at(i, i) = 1.0;
    }
    Vec doc_embedding{0.0, 1.0};
    std::vector<Vec> cand_embeddings{{1.0, 0.0}};

    adaptkw::SeedSet seeds;
    seeds.phrases = {"seed"};
    seeds.embeddings = {{1.0, 0.0}};  // identical to the candidate -> sw = 1
    const double alpha = 0.25;

    auto combined = adaptkw::adapt_embeddings(Mode::kZeroFewShot, doc_embedding,
                                              cand_embeddings, &w, &seeds,
                                              alpha);
    auto few = adaptkw::adapter_forward(w, doc_embedding, cand_embeddings);
    ASSERT_EQ(combined.size(), 1u);
    for (size_t j = 0; j < d; ++j) {
        double want = (1.0 - alpha) * few[0][j] + alpha * doc_embedding[j];
        EXPECT_NEAR(combined[0][j], want, 1e-15);
    }
}

TEST(Pipeline, CombinedModeJudgesSeedSimilarityOnOriginalEmbedding) {
    // seed matches the candidate's ORIGINAL embedding but is orthogonal to
    // its adapted position; sw must still be 1
    const size_t d = 2;
    auto w = adaptkw::init_adapter(d, 3);
    // force a hard rotation: w_o sends the attended mix to (0, 2)
    w.w_o.at(0, 0) = 0.0;
    w.w_o.at(1, 0) = 2.0;
    Vec doc_embedding{0.0, 1.0};
    std::vector<Vec> cand{{1.0, 0.0}};
    adaptkw::SeedSet seeds;
    seeds.phrases = {"seed"};
    seeds.embeddings = {{1.0, 0.0}};

    auto few = adaptkw::adapter_forward(w, doc_embedding, cand);
    auto combined = adaptkw::adapt_embeddings(Mode::kZeroFewShot, doc_embedding,
                                              cand, &w, &seeds, 0.5);
    // blend weight is sw*alpha = 0.5 because sw uses the original embedding
    for (size_t j = 0; j < d; ++j) {
        double want = 0.5 * few[0][j] + 0.5 * doc_embedding[j];
        EXPECT_NEAR(combined[0][j], want, 1e-15);
    }
}

TEST(Pipeline, ModePrerequisitesAreEnforced) {
    HashEmbedder embedder(16, 1);
    PipelineConfig cfg;
    Document doc{"d", "alpha beta gamma"};
    EXPECT_THROW(adaptkw::extract_keywords(doc, embedder, cfg, Mode::kFewShot),
                 adaptkw::ConfigError);
    EXPECT_THROW(adaptkw::extract_keywords(doc, embedder, cfg, Mode::kZeroShot),
                 adaptkw::ConfigError);
    EXPECT_THROW(
        adaptkw::extract_keywords(doc, embedder, cfg, Mode::kZeroFewShot),
        adaptkw::ConfigError);
}

TEST(Pipeline, EmptyCandidatesThrowInExtractionButScoreZeroInEval) {
    HashEmbedder embedder(16, 1);
    PipelineConfig cfg;
    cfg.stopwords = {"the", "a"};
    Document empty_doc{"d", "the a the"};
    EXPECT_THROW(
        adaptkw::extract_keywords(empty_doc, embedder, cfg, Mode::kBenchmark),
        adaptkw::EmptyCandidateSet);

    LabeledCorpus corpus;
    corpus.name = "c";
    LabeledEntry e1;
    e1.document = empty_doc;
    e1.gold = {"anything"};
    LabeledEntry e2;
    e2.document = Document{"d2", "solar power is solar"};
    e2.gold = {"solar"};
    corpus.entries = {e1, e2};

    auto report = adaptkw::evaluate_corpus(corpus, {0, 1}, embedder, cfg,
                                           Mode::kBenchmark);
    ASSERT_EQ(report.per_document.size(), 2u);
    EXPECT_TRUE(report.per_document[0].empty_candidates);
    EXPECT_EQ(report.per_document[0].f_score, 0.0);
    EXPECT_FALSE(report.per_document[1].empty_candidates);
    EXPECT_GT(report.per_document[1].recall, 0.0);
}

TEST(Pipeline, EvaluateCorpusComputesDocumentTriples) {
    HashEmbedder embedder(32, 6);
    PipelineConfig cfg;
    cfg.top_k = 3;
    LabeledCorpus corpus;
    corpus.name = "c";
    for (int i = 0; i < 5; ++i) {
        LabeledEntry e;
        e.document.id = "d" + std::to_string(i);
        e.document.text = "alpha beta gamma delta epsilon zeta";
        e.gold = {"alpha", "beta"};
        corpus.entries.push_back(e);
    }
    auto report = adaptkw::evaluate_corpus(corpus, {0, 1, 2, 3, 4}, embedder,
                                           cfg, Mode::kBenchmark);
    // all documents identical -> identical scores; macro equals each row
    for (const auto& row : report.per_document) {
        EXPECT_DOUBLE_EQ(row.precision, report.per_document[0].precision);
        EXPECT_DOUBLE_EQ(row.f_score, report.per_document[0].f_score);
    }
    EXPECT_NEAR(report.macro_f, report.per_document[0].f_score, 1e-12);
    EXPECT_EQ(report.mode, "benchmark");
    EXPECT_EQ(report.k, 3u);

    EXPECT_THROW(
        adaptkw::evaluate_corpus(corpus, {}, embedder, cfg, Mode::kBenchmark),
        adaptkw::EmptyCorpus);
}

TEST(Pipeline, StemmedMatchingRelaxesPlurals) {
    HashEmbedder embedder(32, 6);
    PipelineConfig cfg;
    cfg.top_k = 2;
    LabeledCorpus corpus;
    LabeledEntry e;
    e.document.id = "d";
    e.document.text = "turbines turbines turbines spinning";
    e.gold = {"turbine"};
    corpus.entries = {e};

    auto strict = adaptkw::evaluate_corpus(corpus, {0}, embedder, cfg,
                                           Mode::kBenchmark);
    EXPECT_EQ(strict.macro_recall, 0.0);  // "turbines" != "turbine"

    cfg.stem = true;
    auto relaxed = adaptkw::evaluate_corpus(corpus, {0}, embedder, cfg,
                                            Mode::kBenchmark);
    EXPECT_GT(relaxed.macro_recall, 0.0);
}

}  // namespace
