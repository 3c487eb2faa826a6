#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "adaptkw/adapter.hpp"
#include "adaptkw/candidates.hpp"
#include "adaptkw/embedding.hpp"
#include "adaptkw/errors.hpp"
#include "adaptkw/matrix.hpp"
#include "adaptkw/text.hpp"

namespace adaptkw {

struct TrainingPair {
    Document document;
    std::vector<std::string> relevant_phrases;
};

struct TrainConfig {
    double learning_rate = 1e-3;
    size_t epochs = 50;
    double lambda_relevant = 1.0;
    double lambda_anchor = 1.0;
    uint64_t rng_seed = 42;

    void validate() const {
        if (learning_rate <= 0.0) throw ConfigError("learning rate must be positive");
        if (epochs == 0) throw ConfigError("epoch count must be positive");
        if (lambda_relevant < 0.0 || lambda_anchor < 0.0)
            throw ConfigError("loss weights must be non-negative");
        if (lambda_relevant + lambda_anchor <= 0.0)
            throw ConfigError("at least one loss weight must be positive");
    }
};

struct TrainResult {
    AdapterWeights weights;
    std::vector<double> epoch_mean_loss;  // one entry per epoch
};

namespace detail {

// One training pair with everything embedded up front: the forward pass only
// depends on the weights, so embeddings never change across epochs.
struct PreparedPair {
    Vec doc_embedding;
    std::vector<Vec> candidate_embeddings;
    std::vector<bool> relevant_mask;
};

inline PreparedPair prepare_pair(const TrainingPair& pair, Embedder& embedder,
                                 const NgramRange& ngrams,
                                 const StopwordSet& stopwords) {
    std::vector<std::string> relevant;
    std::unordered_set<std::string> relevant_set;
    for (const std::string& raw : pair.relevant_phrases) {
        std::string norm = normalize_phrase(raw);
        if (!norm.empty() && relevant_set.insert(norm).second)
            relevant.push_back(std::move(norm));
    }
    if (relevant.empty())
        throw NoRelevantCandidates("training pair '" + pair.document.id +
                                   "' has no relevant phrases");

    CandidateSet candidates = extract_candidates(pair.document, ngrams, stopwords);
    std::unordered_set<std::string> present;
    for (const CandidatePhrase& c : candidates) present.insert(c.surface);
    // Gold phrases the extractor missed still join the context so the
    // relevant loss term always has its targets.
    for (const std::string& phrase : relevant) {
        if (present.contains(phrase)) continue;
        size_t tokens = 1;
        for (char ch : phrase) tokens += ch == ' ';
        candidates.push_back(CandidatePhrase{phrase, tokens});
    }

    PreparedPair out;
    out.relevant_mask.reserve(candidates.size());
    std::vector<std::string> texts;
    texts.reserve(candidates.size() + 1);
    texts.push_back(pair.document.text);
    for (const CandidatePhrase& c : candidates) {
        texts.push_back(c.surface);
        out.relevant_mask.push_back(relevant_set.contains(c.surface));
    }
    std::vector<Vec> vecs = embedder.embed(texts);
    out.doc_embedding = std::move(vecs.front());
    out.candidate_embeddings.assign(std::make_move_iterator(vecs.begin() + 1),
                                    std::make_move_iterator(vecs.end()));
    return out;
}

// Adam with the usual bias correction; one step covers all four matrices.
struct AdamState {
    double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    size_t step = 0;
    Matrix m_q, v_q, m_k, v_k, m_v, v_v, m_o, v_o;

    explicit AdamState(size_t d)
        : m_q(d, d), v_q(d, d), m_k(d, d), v_k(d, d),
          m_v(d, d), v_v(d, d), m_o(d, d), v_o(d, d) {}

    void apply_one(Matrix& w, Matrix& m, Matrix& v, const Matrix& g,
                   double lr, double bc1, double bc2) {
        auto& wd = w.data();
        auto& md = m.data();
        auto& vd = v.data();
        const auto& gd = g.data();
        for (size_t i = 0; i < wd.size(); ++i) {
            md[i] = beta1 * md[i] + (1.0 - beta1) * gd[i];
            vd[i] = beta2 * vd[i] + (1.0 - beta2) * gd[i] * gd[i];
            wd[i] -= lr * (md[i] / bc1) / (std::sqrt(vd[i] / bc2) + eps);
        }
    }

    void update(AdapterWeights& w, const AdapterGradients& g, double lr) {
        ++step;
        const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(step));
        const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(step));
        apply_one(w.w_q, m_q, v_q, g.w_q, lr, bc1, bc2);
        apply_one(w.w_k, m_k, v_k, g.w_k, lr, bc1, bc2);
        apply_one(w.w_v, m_v, v_v, g.w_v, lr, bc1, bc2);
        apply_one(w.w_o, m_o, v_o, g.w_o, lr, bc1, bc2);
    }
};

}  // namespace detail

// Trains a fresh adapter on (document, relevant phrases) pairs. Pair order
// is reshuffled every epoch from cfg.rng_seed, so a given (pairs, embedder,
// cfg) triple always produces identical weights and loss history.
inline TrainResult train_adapter(const std::vector<TrainingPair>& pairs,
                                 Embedder& embedder, const NgramRange& ngrams,
                                 const StopwordSet& stopwords,
                                 const TrainConfig& cfg) {
    cfg.validate();
    if (pairs.empty()) throw NoTrainingPairs("no training pairs supplied");

    std::vector<detail::PreparedPair> prepared;
    prepared.reserve(pairs.size());
    for (const TrainingPair& p : pairs)
        prepared.push_back(detail::prepare_pair(p, embedder, ngrams, stopwords));

    const size_t d = embedder.dimension();
    TrainResult result;
    result.weights = init_adapter(d, cfg.rng_seed);
    result.epoch_mean_loss.reserve(cfg.epochs);

    detail::AdamState adam(d);
    std::mt19937_64 rng(cfg.rng_seed);
    std::vector<size_t> order(prepared.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (size_t i = 0; i + 1 < order.size(); ++i) {
            size_t j = i + static_cast<size_t>(rng() % (order.size() - i));
            std::swap(order[i], order[j]);
        }
        double total = 0.0;
        for (size_t idx : order) {
            const detail::PreparedPair& p = prepared[idx];
            double loss = 0.0;
            AdapterGradients g = adapter_gradient(
                result.weights, p.doc_embedding, p.candidate_embeddings,
                p.relevant_mask, cfg.lambda_relevant, cfg.lambda_anchor, &loss);
            adam.update(result.weights, g, cfg.learning_rate);
            total += loss;
        }
        result.epoch_mean_loss.push_back(total / static_cast<double>(prepared.size()));
    }
    return result;
}

}  // namespace adaptkw
