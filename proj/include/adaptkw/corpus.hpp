#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "adaptkw/candidates.hpp"
#include "adaptkw/errors.hpp"
#include "adaptkw/text.hpp"
#include "adaptkw/trainer.hpp"

namespace adaptkw {

struct LabeledEntry {
    Document document;
    std::vector<std::string> gold;  // normalized, deduplicated, non-empty
};

struct LabeledCorpus {
    std::string name;
    std::vector<LabeledEntry> entries;
};

struct ProtocolConfig {
    double p = 0.10;  // popularity threshold and few-shot budget, as a fraction

    void validate() const {
        if (!(p > 0.0 && p < 1.0)) throw ConfigError("p must be in (0, 1)");
    }
};

// JSON Lines, one {"id", "text", "keywords"} object per line. Blank lines
// are allowed; anything else malformed is a ParseError naming the line.
inline LabeledCorpus load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open corpus file: " + path);

    LabeledCorpus corpus;
    corpus.name = path;
    std::unordered_set<std::string> ids;
    std::string line;
    size_t line_no = 0;
    auto fail = [&](const std::string& why) {
        throw ParseError(path + ":" + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            fail(std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_object()) fail("line must be a JSON object");
        if (!j.contains("id") || !j["id"].is_string())
            fail("missing string field 'id'");
        if (!j.contains("text") || !j["text"].is_string())
            fail("missing string field 'text'");
        if (!j.contains("keywords") || !j["keywords"].is_array())
            fail("missing array field 'keywords'");

        LabeledEntry entry;
        entry.document.id = j["id"].get<std::string>();
        entry.document.text = j["text"].get<std::string>();
        if (entry.document.id.empty()) fail("document id must be non-empty");
        if (!ids.insert(entry.document.id).second)
            throw DuplicateDocumentId(path + ":" + std::to_string(line_no) +
                                      ": duplicate document id '" +
                                      entry.document.id + "'");

        std::unordered_set<std::string> seen;
        for (const auto& kw : j["keywords"]) {
            if (!kw.is_string()) fail("'keywords' entries must be strings");
            std::string norm = normalize_phrase(kw.get<std::string>());
            if (!norm.empty() && seen.insert(norm).second)
                entry.gold.push_back(std::move(norm));
        }
        if (entry.gold.empty()) fail("document has no usable gold keywords");
        corpus.entries.push_back(std::move(entry));
    }
    if (corpus.entries.empty())
        throw EmptyCorpus("corpus file has no documents: " + path);
    return corpus;
}

struct PopularKeyword {
    std::string keyword;
    size_t doc_frequency = 0;
};

// Gold keywords present in strictly more than p*N documents, most frequent
// first, ties in ascending keyword order. The epsilon keeps borderline
// counts like p*N = 6.000000000000001 from changing the verdict.
inline std::vector<PopularKeyword> popular_keywords(const LabeledCorpus& corpus,
                                                    const ProtocolConfig& cfg) {
    cfg.validate();
    std::unordered_map<std::string, size_t> df;
    for (const LabeledEntry& e : corpus.entries)
        for (const std::string& kw : e.gold) ++df[kw];

    const double threshold =
        cfg.p * static_cast<double>(corpus.entries.size()) + 1e-9;
    std::vector<PopularKeyword> out;
    for (const auto& [kw, count] : df)
        if (static_cast<double>(count) > threshold)
            out.push_back(PopularKeyword{kw, count});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.doc_frequency != b.doc_frequency)
            return a.doc_frequency > b.doc_frequency;
        return a.keyword < b.keyword;
    });
    return out;
}

inline std::vector<std::string> auto_seed_words(const LabeledCorpus& corpus,
                                                const ProtocolConfig& cfg) {
    auto popular = popular_keywords(corpus, cfg);
    if (popular.empty())
        throw EmptySeedSet("no gold keyword clears the popularity threshold");
    std::vector<std::string> out;
    out.reserve(popular.size());
    for (auto& p : popular) out.push_back(std::move(p.keyword));
    return out;
}

// ceil(p*N) with a guard against p*N already being an exact integer that
// floating point nudged upward.
inline size_t fewshot_budget(size_t corpus_size, const ProtocolConfig& cfg) {
    double raw = cfg.p * static_cast<double>(corpus_size);
    auto count = static_cast<size_t>(std::ceil(raw - 1e-9));
    return std::max<size_t>(1, count);
}

struct FewshotSelection {
    std::vector<size_t> selected;  // indices into corpus.entries
    std::vector<TrainingPair> pairs;
};

// Documents ranked by how many popular keywords their gold set covers
// (descending; ties on ascending id), truncated to the p% budget. With an
// empty popular list every count is zero, so the ranking degrades to plain
// ascending-id order. Each selected document trains against its full gold
// set.
inline FewshotSelection select_fewshot_documents(
    const LabeledCorpus& corpus, const std::vector<std::string>& popular,
    const ProtocolConfig& cfg) {
    cfg.validate();
    std::unordered_set<std::string> popular_set(popular.begin(), popular.end());

    std::vector<std::pair<size_t, size_t>> ranked;  // (coverage, index)
    ranked.reserve(corpus.entries.size());
    for (size_t i = 0; i < corpus.entries.size(); ++i) {
        size_t coverage = 0;
        for (const std::string& kw : corpus.entries[i].gold)
            coverage += popular_set.contains(kw);
        ranked.emplace_back(coverage, i);
    }
    std::sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return corpus.entries[a.second].document.id <
               corpus.entries[b.second].document.id;
    });

    const size_t budget =
        std::min(fewshot_budget(corpus.entries.size(), cfg), ranked.size());
    FewshotSelection sel;
    sel.selected.reserve(budget);
    sel.pairs.reserve(budget);
    for (size_t i = 0; i < budget; ++i) {
        size_t idx = ranked[i].second;
        sel.selected.push_back(idx);
        sel.pairs.push_back(TrainingPair{corpus.entries[idx].document,
                                         corpus.entries[idx].gold});
    }
    return sel;
}

// Everything not chosen for training, in original corpus order.
inline std::vector<size_t> heldout_split(const LabeledCorpus& corpus,
                                         const std::vector<size_t>& selected) {
    std::unordered_set<size_t> chosen(selected.begin(), selected.end());
    std::vector<size_t> out;
    out.reserve(corpus.entries.size() - chosen.size());
    for (size_t i = 0; i < corpus.entries.size(); ++i)
        if (!chosen.contains(i)) out.push_back(i);
    return out;
}

}  // namespace adaptkw
