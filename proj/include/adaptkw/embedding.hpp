#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "adaptkw/errors.hpp"
#include "adaptkw/matrix.hpp"

namespace adaptkw {

enum class BackendKind { kDeterministicTest, kPrecomputedFile, kHttpService };

struct EmbedderConfig {
    BackendKind backend_kind = BackendKind::kDeterministicTest;
    size_t dimension = 384;
    std::string model_name = "all-MiniLM-L6-v2";
    std::optional<std::string> endpoint;  // required for http
    uint64_t seed = 0;                    // test backend only

    void validate() const {
        if (dimension == 0) throw ConfigError("embedder dimension must be positive");
        if (backend_kind == BackendKind::kHttpService && !endpoint)
            throw ConfigError("http backend requires an endpoint");
    }
};

// Sentence/phrase embedding interface. Implementations must preserve input
// order and length, return vectors of dimension(), and give identical
// vectors for identical input strings within one instance. Thread-safe for
// concurrent embed() calls.
class Embedder {
public:
    virtual ~Embedder() = default;
    virtual std::vector<Vec> embed(const std::vector<std::string>& texts) = 0;
    virtual size_t dimension() const = 0;
    virtual std::string model_name() const = 0;

    Vec embed_one(const std::string& text) {
        return embed(std::vector<std::string>{text}).front();
    }
};

inline double cosine_similarity(const Vec& u, const Vec& v) {
    if (u.size() != v.size())
        throw DimensionMismatch("cosine_similarity: dimensions differ");
    double nu = norm2(u), nv = norm2(v);
    if (nu == 0.0 || nv == 0.0)
        throw ZeroVector("cosine_similarity: zero-norm vector");
    double c = dot(u, v) / (nu * nv);
    return std::clamp(c, -1.0, 1.0);
}

}  // namespace adaptkw
