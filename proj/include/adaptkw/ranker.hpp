#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "adaptkw/candidates.hpp"
#include "adaptkw/embedding.hpp"
#include "adaptkw/errors.hpp"
#include "adaptkw/matrix.hpp"

namespace adaptkw {

struct ScoredKeyword {
    std::string phrase;
    double score = 0.0;  // cosine against the document embedding

    bool operator==(const ScoredKeyword&) const = default;
};

// Every candidate scored and sorted: score descending, ties broken by
// ascending phrase so equal scores still rank deterministically.
inline std::vector<ScoredKeyword> rank_by_relevance(
    const CandidateSet& candidates, const std::vector<Vec>& embeddings,
    const Vec& doc_embedding) {
    if (candidates.size() != embeddings.size())
        throw DimensionMismatch("rank: candidate/embedding counts differ");
    std::vector<ScoredKeyword> out;
    out.reserve(candidates.size());
    for (size_t i = 0; i < candidates.size(); ++i)
        out.push_back(ScoredKeyword{
            candidates[i].surface,
            cosine_similarity(embeddings[i], doc_embedding)});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.phrase < b.phrase;
    });
    return out;
}

inline std::vector<ScoredKeyword> take_top_k(std::vector<ScoredKeyword> ranked,
                                             size_t k) {
    if (ranked.size() > k) ranked.resize(k);
    return ranked;
}

// Maximal marginal relevance: greedily picks the candidate maximizing
// (1 - diversity) * relevance - diversity * max-similarity-to-picked.
// Reported scores stay the plain relevance cosines, and diversity == 0
// reproduces take_top_k(rank_by_relevance(...)) exactly.
inline std::vector<ScoredKeyword> mmr_select(const CandidateSet& candidates,
                                             const std::vector<Vec>& embeddings,
                                             const Vec& doc_embedding, size_t k,
                                             double diversity) {
    if (candidates.size() != embeddings.size())
        throw DimensionMismatch("mmr: candidate/embedding counts differ");
    if (diversity < 0.0 || diversity > 1.0)
        throw ConfigError("diversity must be in [0, 1]");

    const size_t n = candidates.size();
    std::vector<double> relevance(n);
    for (size_t i = 0; i < n; ++i)
        relevance[i] = cosine_similarity(embeddings[i], doc_embedding);

    std::vector<ScoredKeyword> out;
    std::vector<bool> picked(n, false);
    std::vector<double> max_sim_to_picked(
        n, -std::numeric_limits<double>::infinity());
    const size_t want = std::min(k, n);
    out.reserve(want);

    while (out.size() < want) {
        size_t best = n;
        double best_score = 0.0;
        for (size_t i = 0; i < n; ++i) {
            if (picked[i]) continue;
            double score = out.empty()
                               ? relevance[i]
                               : (1.0 - diversity) * relevance[i] -
                                     diversity * max_sim_to_picked[i];
            if (best == n || score > best_score ||
                (score == best_score &&
                 candidates[i].surface < candidates[best].surface)) {
                best = i;
                best_score = score;
            }
        }
        picked[best] = true;
        out.push_back(ScoredKeyword{candidates[best].surface, relevance[best]});
        if (out.size() == want) break;
        for (size_t i = 0; i < n; ++i) {
            if (picked[i]) continue;
            max_sim_to_picked[i] =
                std::max(max_sim_to_picked[i],
                         cosine_similarity(embeddings[i], embeddings[best]));
        }
    }
    return out;
}

}  // namespace adaptkw
