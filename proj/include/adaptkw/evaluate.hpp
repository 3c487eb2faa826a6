#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <unordered_set>
#include <vector>

#include "adaptkw/errors.hpp"

namespace adaptkw {

struct DocumentScore {
    std::string doc_id;
    double precision = 0.0;
    double recall = 0.0;
    double f_score = 0.0;
    bool empty_candidates = false;  // document produced no candidates at all
};

struct EvalReport {
    std::string mode;  // benchmark | zero-shot | few-shot | zero+few-shot
    size_t k = 0;
    std::vector<DocumentScore> per_document;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f = 0.0;
};

struct PrfTriple {
    double precision = 0.0;
    double recall = 0.0;
    double f_score = 0.0;
};

// Exact-match P/R/F against the gold set. Callers pass phrases already
// normalized; matching is plain string equality.
inline PrfTriple evaluate_document(const std::vector<std::string>& extracted,
                                   const std::unordered_set<std::string>& gold) {
    if (gold.empty()) throw EmptyGold("gold keyword set is empty");
    size_t tp = 0;
    for (const std::string& phrase : extracted) tp += gold.contains(phrase);
    PrfTriple out;
    out.precision = extracted.empty()
                        ? 0.0
                        : static_cast<double>(tp) /
                              static_cast<double>(extracted.size());
    out.recall = static_cast<double>(tp) / static_cast<double>(gold.size());
    if (out.precision + out.recall > 0.0)
        out.f_score = 2.0 * out.precision * out.recall /
                      (out.precision + out.recall);
    return out;
}

inline void finalize_macros(EvalReport& report) {
    double p = 0.0, r = 0.0, f = 0.0;
    for (const DocumentScore& s : report.per_document) {
        p += s.precision;
        r += s.recall;
        f += s.f_score;
    }
    const auto n = static_cast<double>(report.per_document.size());
    if (n > 0) {
        report.macro_precision = p / n;
        report.macro_recall = r / n;
        report.macro_f = f / n;
    }
}

// Crude plural folding for the opt-in relaxed matching mode: "-ies" -> "-y",
// then a trailing "-s" dropped unless it looks like "-ss"/"-us"/"-is".
inline std::string stem_phrase(const std::string& phrase) {
    std::string out;
    out.reserve(phrase.size());
    size_t start = 0;
    while (start <= phrase.size()) {
        size_t end = phrase.find(' ', start);
        if (end == std::string::npos) end = phrase.size();
        std::string word = phrase.substr(start, end - start);
        if (word.size() > 4 && word.ends_with("ies"))
            word.replace(word.size() - 3, 3, "y");
        else if (word.size() > 3 && word.ends_with("s") &&
                 !word.ends_with("ss") && !word.ends_with("us") &&
                 !word.ends_with("is"))
            word.pop_back();
        if (!out.empty()) out.push_back(' ');
        out += word;
        if (end == phrase.size()) break;
        start = end + 1;
    }
    return out;
}

namespace detail {

inline std::string percent3(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", fraction * 100.0);
    return buf;
}

inline std::string full_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string mode_label(const std::string& mode) {
    if (mode == "benchmark") return "Benchmark";
    if (mode == "zero-shot") return "Zero-Shot";
    if (mode == "few-shot") return "Few-Shot";
    if (mode == "zero+few-shot") return "Zero-Shot & Few-Shot";
    return mode;
}

}  // namespace detail

// Aligned comparison table; macro metrics as percentages with 3 decimals.
inline std::string render_table(const std::vector<EvalReport>& reports) {
    size_t label_width = std::string("Model").size();
    for (const EvalReport& r : reports)
        label_width = std::max(label_width, detail::mode_label(r.mode).size());

    auto row = [&](const std::string& label, const std::string& p,
                   const std::string& rec, const std::string& f) {
        std::string line = label;
        line.append(label_width - label.size(), ' ');
        auto cell = [&](const std::string& v) {
            line.append(2 + (10 > v.size() ? 10 - v.size() : 0), ' ');
            line += v;
        };
        cell(p);
        cell(rec);
        cell(f);
        line.push_back('\n');
        return line;
    };

    std::string out = row("Model", "Precision", "Recall", "F-Score");
    for (const EvalReport& r : reports)
        out += row(detail::mode_label(r.mode), detail::percent3(r.macro_precision),
                   detail::percent3(r.macro_recall), detail::percent3(r.macro_f));
    return out;
}

// One JSON object per report, full double precision, stable key order.
inline std::string render_machine_lines(const std::vector<EvalReport>& reports) {
    std::string out;
    for (const EvalReport& r : reports) {
        out += "{\"mode\":\"" + r.mode + "\",\"k\":" + std::to_string(r.k) +
               ",\"macro_precision\":" + detail::full_double(r.macro_precision) +
               ",\"macro_recall\":" + detail::full_double(r.macro_recall) +
               ",\"macro_f\":" + detail::full_double(r.macro_f) + "}\n";
    }
    return out;
}

}  // namespace adaptkw
