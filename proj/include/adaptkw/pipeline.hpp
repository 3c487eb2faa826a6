#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "adaptkw/adapter.hpp"
#include "adaptkw/candidates.hpp"
#include "adaptkw/corpus.hpp"
#include "adaptkw/embedding.hpp"
#include "adaptkw/errors.hpp"
#include "adaptkw/evaluate.hpp"
#include "adaptkw/ranker.hpp"
#include "adaptkw/text.hpp"
#include "adaptkw/zeroshot.hpp"

namespace adaptkw {

enum class Mode { kBenchmark, kZeroShot, kFewShot, kZeroFewShot };

inline const char* mode_token(Mode m) {
    switch (m) {
        case Mode::kBenchmark: return "benchmark";
        case Mode::kZeroShot: return "zero-shot";
        case Mode::kFewShot: return "few-shot";
        case Mode::kZeroFewShot: return "zero+few-shot";
    }
    throw ConfigError("unknown mode");
}

inline Mode parse_mode(const std::string& token) {
    if (token == "benchmark") return Mode::kBenchmark;
    if (token == "zero-shot") return Mode::kZeroShot;
    if (token == "few-shot") return Mode::kFewShot;
    if (token == "zero+few-shot") return Mode::kZeroFewShot;
    throw ConfigError("unknown mode '" + token +
                      "' (expected benchmark, zero-shot, few-shot, or "
                      "zero+few-shot)");
}

struct PipelineConfig {
    NgramRange ngrams;
    StopwordSet stopwords;
    size_t top_k = 10;
    double alpha = 0.3;     // zero-shot blend strength
    double diversity = 0.0; // 0 = plain top-k, otherwise MMR trade-off
    bool stem = false;      // plural-folded matching during evaluation only

    void validate() const {
        ngrams.validate();
        if (top_k == 0) throw ConfigError("top-k must be positive");
        if (alpha < 0.0 || alpha > 1.0) throw ConfigError("alpha must be in [0, 1]");
        if (diversity < 0.0 || diversity > 1.0)
            throw ConfigError("diversity must be in [0, 1]");
    }
};

// Applies the selected adaptation to candidate embeddings. Few-shot runs
// the attention adapter; zero-shot blends toward the document with seed
// similarity judged on the candidate's original embedding — also in the
// combined mode, where the blend input is the adapter output.
inline std::vector<Vec> adapt_embeddings(Mode mode, const Vec& doc_embedding,
                                         const std::vector<Vec>& candidate_embeddings,
                                         const AdapterWeights* adapter,
                                         const SeedSet* seeds, double alpha) {
    auto need_adapter = [&]() -> const AdapterWeights& {
        if (!adapter) throw ConfigError(std::string(mode_token(mode)) +
                                        " mode requires adapter weights");
        return *adapter;
    };
    auto need_seeds = [&]() -> const SeedSet& {
        if (!seeds) throw ConfigError(std::string(mode_token(mode)) +
                                      " mode requires seed words");
        return *seeds;
    };
    switch (mode) {
        case Mode::kBenchmark:
            return candidate_embeddings;
        case Mode::kZeroShot:
            return blend_all(candidate_embeddings, candidate_embeddings,
                             doc_embedding, need_seeds(), alpha);
        case Mode::kFewShot:
            return adapter_forward(need_adapter(), doc_embedding,
                                   candidate_embeddings);
        case Mode::kZeroFewShot: {
            auto adapted = adapter_forward(need_adapter(), doc_embedding,
                                           candidate_embeddings);
            return blend_all(adapted, candidate_embeddings, doc_embedding,
                             need_seeds(), alpha);
        }
    }
    throw ConfigError("unknown mode");
}

// Full pipeline for one document: extract -> embed -> adapt -> rank -> cut.
inline std::vector<ScoredKeyword> extract_keywords(
    const Document& doc, Embedder& embedder, const PipelineConfig& cfg,
    Mode mode, const AdapterWeights* adapter = nullptr,
    const SeedSet* seeds = nullptr) {
    cfg.validate();
    CandidateSet candidates = extract_candidates(doc, cfg.ngrams, cfg.stopwords);
    if (candidates.empty())
        throw EmptyCandidateSet("document '" + doc.id +
                                "' produced no candidate phrases");

    std::vector<std::string> texts;
    texts.reserve(candidates.size() + 1);
    texts.push_back(doc.text);
    for (const CandidatePhrase& c : candidates) texts.push_back(c.surface);
    std::vector<Vec> vecs = embedder.embed(texts);
    Vec doc_embedding = std::move(vecs.front());
    std::vector<Vec> candidate_embeddings(
        std::make_move_iterator(vecs.begin() + 1),
        std::make_move_iterator(vecs.end()));

    std::vector<Vec> adapted = adapt_embeddings(
        mode, doc_embedding, candidate_embeddings, adapter, seeds, cfg.alpha);

    if (cfg.diversity > 0.0)
        return mmr_select(candidates, adapted, doc_embedding, cfg.top_k,
                          cfg.diversity);
    return take_top_k(rank_by_relevance(candidates, adapted, doc_embedding),
                      cfg.top_k);
}

// Scores one mode over the given corpus entries (indices into
// corpus.entries). Documents with no candidates score zero and are flagged
// rather than aborting the run.
inline EvalReport evaluate_corpus(const LabeledCorpus& corpus,
                                  const std::vector<size_t>& split,
                                  Embedder& embedder, const PipelineConfig& cfg,
                                  Mode mode,
                                  const AdapterWeights* adapter = nullptr,
                                  const SeedSet* seeds = nullptr) {
    cfg.validate();
    if (split.empty()) throw EmptyCorpus("evaluation split is empty");

    EvalReport report;
    report.mode = mode_token(mode);
    report.k = cfg.top_k;
    report.per_document.reserve(split.size());
    for (size_t idx : split) {
        const LabeledEntry& entry = corpus.entries[idx];
        DocumentScore score;
        score.doc_id = entry.document.id;
        try {
            auto ranked = extract_keywords(entry.document, embedder, cfg, mode,
                                           adapter, seeds);
            std::vector<std::string> extracted;
            extracted.reserve(ranked.size());
            for (ScoredKeyword& kw : ranked)
                extracted.push_back(std::move(kw.phrase));
            std::unordered_set<std::string> gold(entry.gold.begin(),
                                                 entry.gold.end());
            if (cfg.stem) {
                for (std::string& p : extracted) p = stem_phrase(p);
                std::unordered_set<std::string> stemmed;
                for (const std::string& g : gold) stemmed.insert(stem_phrase(g));
                gold = std::move(stemmed);
            }
            PrfTriple prf = evaluate_document(extracted, gold);
            score.precision = prf.precision;
            score.recall = prf.recall;
            score.f_score = prf.f_score;
        } catch (const EmptyCandidateSet&) {
            score.empty_candidates = true;
        }
        report.per_document.push_back(std::move(score));
    }
    finalize_macros(report);
    return report;
}

}  // namespace adaptkw
