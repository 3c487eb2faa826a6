#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "adaptkw/errors.hpp"
#include "adaptkw/text.hpp"

namespace adaptkw {

struct NgramRange {
    size_t n_ini = 1;
    size_t n_fin = 1;

    void validate() const {
        if (n_ini < 1 || n_ini > n_fin)
            throw ConfigError("n-gram range requires 1 <= n_ini <= n_fin");
    }
};

struct Document {
    std::string id;
    std::string text;
};

struct CandidatePhrase {
    std::string surface;   // normalized: lowercase, single-space separated
    size_t token_count = 0;

    bool operator==(const CandidatePhrase&) const = default;
};

using CandidateSet = std::vector<CandidatePhrase>;

// All contiguous token n-grams with n in [n_ini, n_fin], enumerated shortest
// n first, then by start position. An n-gram is rejected when its first or
// last token is a stopword (interior stopwords are fine). Duplicates are
// dropped keeping the first occurrence. An empty result is the
// EmptyCandidateSet signal; whether that is fatal is the caller's call.
inline CandidateSet extract_candidates(const Document& doc,
                                       const NgramRange& range,
                                       const StopwordSet& stopwords) {
    range.validate();
    const std::vector<std::string> tokens = tokenize(doc.text);
    CandidateSet out;
    std::unordered_set<std::string> seen;
    for (size_t n = range.n_ini; n <= range.n_fin; ++n) {
        if (n > tokens.size()) break;
        for (size_t start = 0; start + n <= tokens.size(); ++start) {
            if (stopwords.contains(tokens[start]) ||
                stopwords.contains(tokens[start + n - 1]))
                continue;
            std::string surface = tokens[start];
            for (size_t j = 1; j < n; ++j) {
                surface += ' ';
                surface += tokens[start + j];
            }
            if (seen.insert(surface).second)
                out.push_back(CandidatePhrase{std::move(surface), n});
        }
    }
    return out;
}

}  // namespace adaptkw
