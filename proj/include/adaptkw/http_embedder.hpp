#pragma once

#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "adaptkw/embedding.hpp"

namespace adaptkw {

// Client for an embedding service:
//   POST {endpoint}/embed  {"texts": ["..."]}  ->  {"embeddings": [[...], ...]}
// Responses must preserve order. Identical strings are served from a cache,
// which also upholds the identical-input-identical-vector contract when the
// remote model is not bitwise deterministic.
class HttpEmbedder final : public Embedder {
public:
    HttpEmbedder(std::string endpoint, size_t dimension,
                 std::string model_name = "http-service")
        : endpoint_(std::move(endpoint)), dimension_(dimension),
          model_name_(std::move(model_name)) {
        if (dimension_ == 0) throw ConfigError("dimension must be positive");
    }

    std::vector<Vec> embed(const std::vector<std::string>& texts) override {
        std::vector<Vec> out(texts.size());
        std::vector<std::string> unique;  // uncached texts, first-seen order
        std::unordered_map<std::string, std::vector<size_t>> slots;
        {
            std::lock_guard lock(mu_);
            for (size_t i = 0; i < texts.size(); ++i) {
                auto it = cache_.find(texts[i]);
                if (it != cache_.end()) {
                    out[i] = it->second;
                    continue;
                }
                auto [slot, fresh] = slots.try_emplace(texts[i]);
                if (fresh) unique.push_back(texts[i]);
                slot->second.push_back(i);
            }
        }
        if (!unique.empty()) {
            nlohmann::json req;
            auto& arr = req["texts"] = nlohmann::json::array();
            for (const std::string& t : unique) arr.push_back(t);

            httplib::Client client(endpoint_);
            client.set_connection_timeout(10);
            client.set_read_timeout(60);
            auto res = client.Post("/embed", req.dump(), "application/json");
            if (!res)
                throw BackendUnavailable("embedding service unreachable: " +
                                         endpoint_);
            if (res->status < 200 || res->status >= 300)
                throw BackendUnavailable("embedding service returned HTTP " +
                                         std::to_string(res->status));
            nlohmann::json body;
            try {
                body = nlohmann::json::parse(res->body);
            } catch (const nlohmann::json::exception& e) {
                throw BackendUnavailable(std::string("bad service response: ") +
                                         e.what());
            }
            if (!body.contains("embeddings") || !body["embeddings"].is_array() ||
                body["embeddings"].size() != unique.size())
                throw BackendUnavailable(
                    "service response must hold one embedding per input");

            std::lock_guard lock(mu_);
            for (size_t j = 0; j < unique.size(); ++j) {
                const auto& row = body["embeddings"][j];
                if (!row.is_array() || row.size() != dimension_)
                    throw DimensionMismatch(
                        "service returned dimension " +
                        std::to_string(row.is_array() ? row.size() : 0) +
                        ", expected " + std::to_string(dimension_));
                Vec v;
                v.reserve(dimension_);
                for (const auto& x : row) {
                    if (!x.is_number())
                        throw BackendUnavailable(
                            "service returned a non-numeric embedding entry");
                    v.push_back(x.get<double>());
                }
                cache_[unique[j]] = v;
                for (size_t idx : slots[unique[j]]) out[idx] = v;
            }
        }
        return out;
    }

    size_t dimension() const override { return dimension_; }
    std::string model_name() const override { return model_name_; }

private:
    std::string endpoint_;
    size_t dimension_;
    std::string model_name_;
    std::mutex mu_;
    std::unordered_map<std::string, Vec> cache_;
};

}  // namespace adaptkw
