#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "adaptkw/errors.hpp"
#include "adaptkw/matrix.hpp"

namespace adaptkw {

// Single-head scaled dot-product attention over [doc, candidates] with a
// residual output projection. With w_o == 0 the layer is exactly the
// identity on candidate embeddings, so an untrained adapter leaves rankings
// untouched.
struct AdapterWeights {
    size_t d = 0;
    Matrix w_q, w_k, w_v, w_o;

    bool operator==(const AdapterWeights&) const = default;
};

struct AdapterGradients {
    Matrix w_q, w_k, w_v, w_o;
};

// w_q/w_k/w_v i.i.d. uniform in [-1/sqrt(d), 1/sqrt(d)] from the seeded
// generator (row-major fill order, q then k then v); w_o all zeros.
inline AdapterWeights init_adapter(size_t d, uint64_t seed) {
    if (d == 0) throw ConfigError("adapter dimension must be positive");
    AdapterWeights w;
    w.d = d;
    w.w_q = Matrix(d, d);
    w.w_k = Matrix(d, d);
    w.w_v = Matrix(d, d);
    w.w_o = Matrix(d, d);
    std::mt19937_64 rng(seed);
    const double bound = 1.0 / std::sqrt(static_cast<double>(d));
    auto next_uniform = [&] {
        // top 53 bits -> [0,1); keeps the stream platform-independent
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return (2.0 * u - 1.0) * bound;
    };
    for (Matrix* m : {&w.w_q, &w.w_k, &w.w_v})
        for (double& x : m->data()) x = next_uniform();
    return w;
}

namespace detail {

inline void softmax_inplace(Vec& v) {
    double mx = v[0];
    for (double x : v) mx = std::max(mx, x);
    double sum = 0.0;
    for (double& x : v) {
        x = std::exp(x - mx);
        sum += x;
    }
    for (double& x : v) x /= sum;
}

// Everything the backward pass needs from one forward evaluation.
struct AdapterTrace {
    std::vector<Vec> context;  // M: doc embedding then candidates (k+1 rows)
    std::vector<Vec> keys, vals, queries;
    std::vector<Vec> alphas;   // per candidate, k+1 attention weights
    std::vector<Vec> attended; // o_i per candidate
    std::vector<Vec> outputs;  // a_i per candidate
};

inline AdapterTrace adapter_forward_trace(const AdapterWeights& w,
                                          const Vec& doc_embedding,
                                          const std::vector<Vec>& candidates) {
    const size_t d = w.d;
    if (doc_embedding.size() != d)
        throw DimensionMismatch("document embedding dimension != adapter d");
    for (const Vec& c : candidates)
        if (c.size() != d)
            throw DimensionMismatch("candidate embedding dimension != adapter d");
    const size_t k = candidates.size();
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));

    AdapterTrace t;
    t.context.reserve(k + 1);
    t.context.push_back(doc_embedding);
    for (const Vec& c : candidates) t.context.push_back(c);

    t.keys.reserve(k + 1);
    t.vals.reserve(k + 1);
    for (const Vec& m : t.context) {
        t.keys.push_back(w.w_k.apply(m));
        t.vals.push_back(w.w_v.apply(m));
    }

    t.queries.reserve(k);
    t.alphas.reserve(k);
    t.attended.reserve(k);
    t.outputs.reserve(k);
    for (size_t i = 0; i < k; ++i) {
        Vec q = w.w_q.apply(candidates[i]);
        Vec scores(k + 1);
        for (size_t j = 0; j <= k; ++j)
            scores[j] = dot(q, t.keys[j]) * inv_sqrt_d;
        softmax_inplace(scores);
        Vec o(d, 0.0);
        for (size_t j = 0; j <= k; ++j) axpy(o, scores[j], t.vals[j]);
        Vec a = candidates[i];
        axpy(a, 1.0, w.w_o.apply(o));
        t.queries.push_back(std::move(q));
        t.alphas.push_back(std::move(scores));
        t.attended.push_back(std::move(o));
        t.outputs.push_back(std::move(a));
    }
    return t;
}

}  // namespace detail

// Recomputed candidate embeddings; output order matches input order.
inline std::vector<Vec> adapter_forward(const AdapterWeights& w,
                                        const Vec& doc_embedding,
                                        const std::vector<Vec>& candidates) {
    if (candidates.empty()) return {};
    return detail::adapter_forward_trace(w, doc_embedding, candidates).outputs;
}

namespace detail {

inline double mse(const Vec& u, const Vec& v) {
    double acc = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
        double diff = u[i] - v[i];
        acc += diff * diff;
    }
    return acc / static_cast<double>(u.size());
}

}  // namespace detail

// Mean MSE(doc, a_c) over relevant candidates, weighted by lambda_relevant,
// plus mean MSE(a_c, e_c) over the rest, weighted by lambda_anchor. The
// anchor term is 0 when every candidate is relevant.
inline double adapter_loss(const AdapterWeights& w, const Vec& doc_embedding,
                           const std::vector<Vec>& candidates,
                           const std::vector<bool>& relevant_mask,
                           double lambda_relevant = 1.0,
                           double lambda_anchor = 1.0) {
    if (relevant_mask.size() != candidates.size())
        throw DimensionMismatch("relevant mask length != candidate count");
    size_t n_rel = 0;
    for (bool b : relevant_mask) n_rel += b;
    if (n_rel == 0)
        throw NoRelevantCandidates("loss needs at least one relevant candidate");
    const size_t n_anchor = candidates.size() - n_rel;

    auto outputs = adapter_forward(w, doc_embedding, candidates);
    double rel = 0.0, anchor = 0.0;
    for (size_t i = 0; i < candidates.size(); ++i) {
        if (relevant_mask[i])
            rel += detail::mse(doc_embedding, outputs[i]);
        else
            anchor += detail::mse(outputs[i], candidates[i]);
    }
    double loss = lambda_relevant * rel / static_cast<double>(n_rel);
    if (n_anchor > 0)
        loss += lambda_anchor * anchor / static_cast<double>(n_anchor);
    return loss;
}

// Analytic gradient of adapter_loss for all four weight matrices
// (softmax and residual differentiated by hand).
inline AdapterGradients adapter_gradient(const AdapterWeights& w,
                                         const Vec& doc_embedding,
                                         const std::vector<Vec>& candidates,
                                         const std::vector<bool>& relevant_mask,
                                         double lambda_relevant = 1.0,
                                         double lambda_anchor = 1.0,
                                         double* loss_out = nullptr) {
    if (relevant_mask.size() != candidates.size())
        throw DimensionMismatch("relevant mask length != candidate count");
    size_t n_rel = 0;
    for (bool b : relevant_mask) n_rel += b;
    if (n_rel == 0)
        throw NoRelevantCandidates("loss needs at least one relevant candidate");
    const size_t n_anchor = candidates.size() - n_rel;
    const size_t d = w.d;
    const size_t k = candidates.size();
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));

    auto t = detail::adapter_forward_trace(w, doc_embedding, candidates);

    AdapterGradients g;
    g.w_q = Matrix(d, d);
    g.w_k = Matrix(d, d);
    g.w_v = Matrix(d, d);
    g.w_o = Matrix(d, d);

    std::vector<Vec> dval(k + 1, Vec(d, 0.0));
    std::vector<Vec> dkey(k + 1, Vec(d, 0.0));
    double loss = 0.0;

    for (size_t i = 0; i < k; ++i) {
        // dL/da_i, and the loss while we are here
        Vec da(d);
        if (relevant_mask[i]) {
            const double scale =
                2.0 * lambda_relevant /
                (static_cast<double>(d) * static_cast<double>(n_rel));
            for (size_t j = 0; j < d; ++j)
                da[j] = scale * (t.outputs[i][j] - doc_embedding[j]);
            loss += lambda_relevant * detail::mse(doc_embedding, t.outputs[i]) /
                    static_cast<double>(n_rel);
        } else {
            const double scale =
                2.0 * lambda_anchor /
                (static_cast<double>(d) * static_cast<double>(n_anchor));
            for (size_t j = 0; j < d; ++j)
                da[j] = scale * (t.outputs[i][j] - candidates[i][j]);
            loss += lambda_anchor * detail::mse(t.outputs[i], candidates[i]) /
                    static_cast<double>(n_anchor);
        }

        // a_i = x_i + W_O o_i
        g.w_o.add_outer(da, t.attended[i]);
        Vec du = w.w_o.apply_transposed(da);  // dL/do_i

        // o_i = sum_j alpha_ij v_j
        Vec dalpha(k + 1);
        for (size_t j = 0; j <= k; ++j) {
            axpy(dval[j], t.alphas[i][j], du);
            dalpha[j] = dot(du, t.vals[j]);
        }

        // softmax backward
        double inner = 0.0;
        for (size_t j = 0; j <= k; ++j) inner += t.alphas[i][j] * dalpha[j];
        Vec dscore(k + 1);
        for (size_t j = 0; j <= k; ++j)
            dscore[j] = t.alphas[i][j] * (dalpha[j] - inner) * inv_sqrt_d;

        // s_ij = q_i . key_j / sqrt(d)
        Vec dq(d, 0.0);
        for (size_t j = 0; j <= k; ++j) {
            axpy(dq, dscore[j], t.keys[j]);
            axpy(dkey[j], dscore[j], t.queries[i]);
        }
        g.w_q.add_outer(dq, candidates[i]);
    }

    for (size_t j = 0; j <= k; ++j) {
        g.w_v.add_outer(dval[j], t.context[j]);
        g.w_k.add_outer(dkey[j], t.context[j]);
    }

    if (loss_out) *loss_out = loss;
    return g;
}

}  // namespace adaptkw
