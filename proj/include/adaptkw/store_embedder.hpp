#pragma once

#include <fstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "adaptkw/embedding.hpp"
#include "adaptkw/text.hpp"

namespace adaptkw {

// Read-only embedding store loaded from JSON Lines:
//   {"text": "<string>", "vector": [<numbers>]}
// Keys are normalized with normalize_phrase; the dimension is inferred from
// the first row and enforced for the rest.
class PrecomputedStore {
public:
    static PrecomputedStore load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open embedding store: " + path);
        PrecomputedStore store;
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            nlohmann::json row;
            try {
                row = nlohmann::json::parse(line);
            } catch (const nlohmann::json::exception& e) {
                throw ParseError("store line " + std::to_string(lineno) + ": " +
                                 e.what());
            }
            if (!row.is_object() || !row.contains("text") ||
                !row.contains("vector") || !row["text"].is_string() ||
                !row["vector"].is_array())
                throw ParseError("store line " + std::to_string(lineno) +
                                 ": expected {\"text\", \"vector\"}");
            Vec v;
            v.reserve(row["vector"].size());
            for (const auto& x : row["vector"]) {
                if (!x.is_number())
                    throw ParseError("store line " + std::to_string(lineno) +
                                     ": non-numeric vector entry");
                v.push_back(x.get<double>());
            }
            if (store.dimension_ == 0) {
                if (v.empty())
                    throw ParseError("store line " + std::to_string(lineno) +
                                     ": empty vector");
                store.dimension_ = v.size();
            } else if (v.size() != store.dimension_) {
                throw DimensionMismatch(
                    "store line " + std::to_string(lineno) + ": expected " +
                    std::to_string(store.dimension_) + " values, got " +
                    std::to_string(v.size()));
            }
            store.map_[normalize_phrase(row["text"].get<std::string>())] =
                std::move(v);
        }
        if (store.map_.empty()) throw ParseError("empty embedding store: " + path);
        return store;
    }

    const Vec& lookup(const std::string& text) const {
        auto it = map_.find(normalize_phrase(text));
        if (it == map_.end())
            throw MissingEmbedding("no stored embedding for: " + text);
        return it->second;
    }

    size_t dimension() const { return dimension_; }
    size_t size() const { return map_.size(); }

private:
    std::unordered_map<std::string, Vec> map_;
    size_t dimension_ = 0;
};

class StoreEmbedder final : public Embedder {
public:
    explicit StoreEmbedder(PrecomputedStore store,
                           std::string model_name = "precomputed-file")
        : store_(std::move(store)), model_name_(std::move(model_name)) {}

    static StoreEmbedder from_file(const std::string& path) {
        return StoreEmbedder(PrecomputedStore::load(path));
    }

    std::vector<Vec> embed(const std::vector<std::string>& texts) override {
        std::vector<Vec> out;
        out.reserve(texts.size());
        for (const auto& t : texts) out.push_back(store_.lookup(t));
        return out;
    }

    size_t dimension() const override { return store_.dimension(); }
    std::string model_name() const override { return model_name_; }

private:
    PrecomputedStore store_;
    std::string model_name_;
};

}  // namespace adaptkw
