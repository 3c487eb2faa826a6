#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "adaptkw/adapter.hpp"
#include "adaptkw/errors.hpp"

namespace adaptkw {

inline constexpr int kAdapterFormatVersion = 1;

namespace detail {

// %.17g guarantees doubles survive a save/load round trip bit-exactly.
inline void write_double(std::string& out, double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    out += buf;
}

inline void write_matrix(std::string& out, const Matrix& m) {
    out += '[';
    for (size_t r = 0; r < m.rows(); ++r) {
        if (r) out += ',';
        out += '[';
        for (size_t c = 0; c < m.cols(); ++c) {
            if (c) out += ',';
            write_double(out, m.at(r, c));
        }
        out += ']';
    }
    out += ']';
}

inline Matrix read_matrix(const nlohmann::json& j, const std::string& field,
                          size_t d) {
    if (!j.is_array() || j.size() != d)
        throw ParseError("adapter file: " + field + " must be a " +
                         std::to_string(d) + "x" + std::to_string(d) +
                         " matrix");
    Matrix m(d, d);
    for (size_t r = 0; r < d; ++r) {
        const auto& row = j[r];
        if (!row.is_array() || row.size() != d)
            throw ParseError("adapter file: " + field + " row " +
                             std::to_string(r) + " must have " +
                             std::to_string(d) + " entries");
        for (size_t c = 0; c < d; ++c) {
            if (!row[c].is_number())
                throw ParseError("adapter file: " + field +
                                 " contains a non-numeric entry");
            m.at(r, c) = row[c].get<double>();
        }
    }
    return m;
}

}  // namespace detail

inline std::string adapter_to_json(const AdapterWeights& w,
                                   const std::string& model_name) {
    std::string out;
    out.reserve(w.d * w.d * 4 * 20 + 256);
    out += "{\"version\":";
    out += std::to_string(kAdapterFormatVersion);
    out += ",\"dimension\":";
    out += std::to_string(w.d);
    out += ",\"model_name\":";
    out += nlohmann::json(model_name).dump();
    out += ",\"w_q\":";
    detail::write_matrix(out, w.w_q);
    out += ",\"w_k\":";
    detail::write_matrix(out, w.w_k);
    out += ",\"w_v\":";
    detail::write_matrix(out, w.w_v);
    out += ",\"w_o\":";
    detail::write_matrix(out, w.w_o);
    out += "}\n";
    return out;
}

inline void save_adapter(const AdapterWeights& w, const std::string& path,
                         const std::string& model_name) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open adapter file for writing: " + path);
    f << adapter_to_json(w, model_name);
    if (!f) throw ConfigError("failed writing adapter file: " + path);
}

struct LoadedAdapter {
    AdapterWeights weights;
    std::string model_name;
};

inline LoadedAdapter adapter_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("adapter file: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("adapter file: top level must be an object");
    if (!j.contains("version") || !j["version"].is_number_integer())
        throw ParseError("adapter file: missing integer field 'version'");
    const int version = j["version"].get<int>();
    if (version != kAdapterFormatVersion)
        throw VersionMismatch("adapter file: unsupported version " +
                              std::to_string(version) + " (expected " +
                              std::to_string(kAdapterFormatVersion) + ")");
    if (!j.contains("dimension") || !j["dimension"].is_number_integer() ||
        j["dimension"].get<long long>() <= 0)
        throw ParseError("adapter file: missing positive integer field 'dimension'");
    if (!j.contains("model_name") || !j["model_name"].is_string())
        throw ParseError("adapter file: missing string field 'model_name'");
    const size_t d = j["dimension"].get<size_t>();

    LoadedAdapter out;
    out.model_name = j["model_name"].get<std::string>();
    out.weights.d = d;
    for (const char* field : {"w_q", "w_k", "w_v", "w_o"})
        if (!j.contains(field))
            throw ParseError(std::string("adapter file: missing field '") +
                             field + "'");
    out.weights.w_q = detail::read_matrix(j["w_q"], "w_q", d);
    out.weights.w_k = detail::read_matrix(j["w_k"], "w_k", d);
    out.weights.w_v = detail::read_matrix(j["w_v"], "w_v", d);
    out.weights.w_o = detail::read_matrix(j["w_o"], "w_o", d);
    return out;
}

inline LoadedAdapter load_adapter(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open adapter file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return adapter_from_json(ss.str());
}

}  // namespace adaptkw
