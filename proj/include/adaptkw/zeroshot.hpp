#pragma once

#include <algorithm>
#include <fstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "adaptkw/embedding.hpp"
#include "adaptkw/errors.hpp"
#include "adaptkw/matrix.hpp"
#include "adaptkw/text.hpp"

namespace adaptkw {

// Domain seed words with their embeddings, ready for similarity lookups.
struct SeedSet {
    std::vector<std::string> phrases;  // normalized, deduplicated
    std::vector<Vec> embeddings;
};

inline SeedSet make_seed_set(const std::vector<std::string>& raw_phrases,
                             Embedder& embedder) {
    SeedSet set;
    std::unordered_set<std::string> seen;
    for (const std::string& raw : raw_phrases) {
        std::string norm = normalize_phrase(raw);
        if (!norm.empty() && seen.insert(norm).second)
            set.phrases.push_back(std::move(norm));
    }
    if (set.phrases.empty())
        throw EmptySeedSet("seed word list is empty after normalization");
    set.embeddings = embedder.embed(set.phrases);
    return set;
}

// One seed word or phrase per line; '#' starts a comment; blank lines ignored.
inline std::vector<std::string> load_seed_words(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open seed word file: " + path);
    std::vector<std::string> phrases;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::string w = normalize_phrase(line);
        if (!w.empty()) phrases.push_back(std::move(w));
    }
    if (phrases.empty())
        throw EmptySeedSet("seed word file has no entries: " + path);
    return phrases;
}

// Domain-relatedness weight: best cosine against any seed, floored at 0 so
// anti-correlated candidates are left untouched rather than pushed away.
inline double seed_similarity_weight(const Vec& candidate_embedding,
                                     const SeedSet& seeds) {
    if (seeds.embeddings.empty())
        throw EmptySeedSet("seed set has no embeddings");
    double best = 0.0;
    for (const Vec& s : seeds.embeddings)
        best = std::max(best, cosine_similarity(candidate_embedding, s));
    return best;
}

// a_c = (1 - sw*alpha) * e_c + (sw*alpha) * E_D. The endpoints return exact
// copies so a zero weight is bit-for-bit a no-op.
inline Vec blend_toward_document(const Vec& candidate_embedding,
                                 const Vec& doc_embedding, double seed_weight,
                                 double alpha) {
    if (candidate_embedding.size() != doc_embedding.size())
        throw DimensionMismatch("blend: candidate/document dimensions differ");
    if (seed_weight < 0.0 || seed_weight > 1.0)
        throw ConfigError("seed weight must be in [0, 1]");
    if (alpha < 0.0 || alpha > 1.0)
        throw ConfigError("alpha must be in [0, 1]");
    const double t = seed_weight * alpha;
    if (t == 0.0) return candidate_embedding;
    if (t == 1.0) return doc_embedding;
    Vec out(candidate_embedding.size());
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = (1.0 - t) * candidate_embedding[i] + t * doc_embedding[i];
    return out;
}

inline std::vector<Vec> blend_all(const std::vector<Vec>& candidate_embeddings,
                                  const std::vector<Vec>& original_embeddings,
                                  const Vec& doc_embedding,
                                  const SeedSet& seeds, double alpha) {
    if (candidate_embeddings.size() != original_embeddings.size())
        throw DimensionMismatch("blend_all: embedding list lengths differ");
    std::vector<Vec> out;
    out.reserve(candidate_embeddings.size());
    for (size_t i = 0; i < candidate_embeddings.size(); ++i) {
        // similarity is judged on the original embedding even when the
        // blend input was already reshaped by the adapter
        double sw = seed_similarity_weight(original_embeddings[i], seeds);
        out.push_back(blend_toward_document(candidate_embeddings[i],
                                            doc_embedding, sw, alpha));
    }
    return out;
}

}  // namespace adaptkw
