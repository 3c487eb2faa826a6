#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "adaptkw/errors.hpp"
#include "adaptkw/unicode.hpp"

namespace adaptkw {

using StopwordSet = std::unordered_set<std::string>;

// Lowercase + NFC + collapse internal whitespace runs to single spaces + trim.
inline std::string normalize_phrase(std::string_view s) {
    auto cps = unicode::nfc(unicode::decode_utf8(s));
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    bool started = false;
    for (char32_t cp : cps) {
        if (unicode::is_whitespace(cp)) {
            pending_space = started;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        unicode::append_utf8(out, unicode::to_lower(cp));
        started = true;
    }
    return out;
}

// Maximal runs of alphanumeric codepoints, keeping hyphens that join two
// alphanumeric neighbors. Lowercased, NFC-normalized, punctuation dropped.
inline std::vector<std::string> tokenize(std::string_view text) {
    auto cps = unicode::nfc(unicode::decode_utf8(text));
    std::vector<std::string> tokens;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            tokens.push_back(cur);
            cur.clear();
        }
    };
    for (size_t i = 0; i < cps.size(); ++i) {
        char32_t cp = cps[i];
        if (unicode::is_word_char(cp)) {
            unicode::append_utf8(cur, unicode::to_lower(cp));
        } else if (cp == U'-' && !cur.empty() && i + 1 < cps.size() &&
                   unicode::is_word_char(cps[i + 1])) {
            cur.push_back('-');
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

// One lowercase word per line; '#' starts a comment; blank lines ignored.
inline StopwordSet load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open stopword file: " + path);
    StopwordSet words;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::string w = normalize_phrase(line);
        if (!w.empty()) words.insert(w);
    }
    return words;
}

}  // namespace adaptkw
