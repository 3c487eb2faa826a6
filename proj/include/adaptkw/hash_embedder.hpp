#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "adaptkw/embedding.hpp"
#include "adaptkw/text.hpp"
#include "adaptkw/unicode.hpp"

namespace adaptkw {

namespace detail {

inline uint64_t fnv1a64(std::string_view s, uint64_t seed) {
    uint64_t h = 0xcbf29ce484222325ULL ^ (seed * 0x9E3779B97F4A7C15ULL);
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    // final avalanche (splitmix64 tail)
    h ^= h >> 30; h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 27; h *= 0x94d049bb133111ebULL;
    h ^= h >> 31;
    return h;
}

}  // namespace detail

// Feature-hashing embedding of the normalized text: each word's codepoint
// trigrams are hashed into d signed buckets and the word vector is
// L2-normalized; multi-word texts are the L2-normalized mean of their word
// vectors. Depends only on (normalized text, d, seed).
inline Vec hash_embed(std::string_view text, size_t d, uint64_t seed) {
    const std::string norm = normalize_phrase(text);

    auto embed_word = [&](std::string_view word) {
        Vec v(d, 0.0);
        auto cps = unicode::decode_utf8(word);
        auto add_gram = [&](std::string_view gram) {
            uint64_t h = detail::fnv1a64(gram, seed);
            size_t bucket = static_cast<size_t>(h % d);
            double sign = (h >> 63) ? -1.0 : 1.0;
            v[bucket] += sign;
        };
        if (cps.size() <= 3) {
            add_gram(word);
        } else {
            for (size_t i = 0; i + 3 <= cps.size(); ++i) {
                std::string gram;
                for (size_t j = 0; j < 3; ++j)
                    unicode::append_utf8(gram, cps[i + j]);
                add_gram(gram);
            }
        }
        double n = norm2(v);
        if (n == 0.0) {
            // all trigrams cancelled; fall back to a unit basis vector
            uint64_t h = detail::fnv1a64(word, seed ^ 0x5bd1e995);
            v[static_cast<size_t>(h % d)] = 1.0;
            return v;
        }
        for (double& x : v) x /= n;
        return v;
    };

    Vec acc(d, 0.0);
    size_t words = 0;
    size_t pos = 0;
    while (pos < norm.size()) {
        size_t space = norm.find(' ', pos);
        if (space == std::string::npos) space = norm.size();
        if (space > pos) {
            axpy(acc, 1.0, embed_word(std::string_view(norm).substr(pos, space - pos)));
            ++words;
        }
        pos = space + 1;
    }
    if (words == 0) return embed_word("");
    for (double& x : acc) x /= static_cast<double>(words);
    double n = norm2(acc);
    if (n == 0.0) return embed_word(norm);
    for (double& x : acc) x /= n;
    return acc;
}

class HashEmbedder final : public Embedder {
public:
    HashEmbedder(size_t dimension, uint64_t seed,
                 std::string model_name = "deterministic-test")
        : dimension_(dimension), seed_(seed),
          model_name_(std::move(model_name)) {
        if (dimension_ == 0) throw ConfigError("dimension must be positive");
    }

    std::vector<Vec> embed(const std::vector<std::string>& texts) override {
        std::vector<Vec> out;
        out.reserve(texts.size());
        for (const auto& t : texts) out.push_back(hash_embed(t, dimension_, seed_));
        return out;
    }

    size_t dimension() const override { return dimension_; }
    std::string model_name() const override { return model_name_; }

private:
    size_t dimension_;
    uint64_t seed_;
    std::string model_name_;
};

}  // namespace adaptkw
