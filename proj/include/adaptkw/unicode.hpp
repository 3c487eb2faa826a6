#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "adaptkw/unicode_tables.hpp"

// Minimal Unicode support: UTF-8 codec, NFC normalization, simple lowercase,
// and the two character classes the tokenizer needs. Table-driven from
// unicode_tables.hpp; Hangul composition is algorithmic per UAX #15.

namespace adaptkw::unicode {

inline constexpr char32_t kReplacement = 0xFFFD;

// --- UTF-8 codec ---------------------------------------------------------

inline std::vector<char32_t> decode_utf8(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        unsigned char b = static_cast<unsigned char>(s[i]);
        char32_t cp = kReplacement;
        size_t len = 1;
        if (b < 0x80) {
            cp = b;
        } else if ((b & 0xE0) == 0xC0) {
            len = 2; cp = b & 0x1F;
        } else if ((b & 0xF0) == 0xE0) {
            len = 3; cp = b & 0x0F;
        } else if ((b & 0xF8) == 0xF0) {
            len = 4; cp = b & 0x07;
        }
        if (len > 1) {
            if (i + len > s.size()) {
                out.push_back(kReplacement);
                ++i;
                continue;
            }
            bool ok = true;
            char32_t acc = cp;
            for (size_t j = 1; j < len; ++j) {
                unsigned char c = static_cast<unsigned char>(s[i + j]);
                if ((c & 0xC0) != 0x80) { ok = false; break; }
                acc = (acc << 6) | (c & 0x3F);
            }
            static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
            if (!ok || acc < kMin[len] || acc > 0x10FFFF ||
                (acc >= 0xD800 && acc <= 0xDFFF)) {
                out.push_back(kReplacement);
                ++i;
                continue;
            }
            cp = acc;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

inline void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::string encode_utf8(const std::vector<char32_t>& cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) append_utf8(out, cp);
    return out;
}

// --- character classes ----------------------------------------------------

namespace detail {

inline bool in_ranges(const unicode_tables::Range* table, size_t count,
                      char32_t cp) {
    auto* end = table + count;
    auto* it = std::upper_bound(table, end, cp,
                                [](char32_t v, const unicode_tables::Range& r) {
                                    return v < r.lo;
                                });
    return it != table && cp <= (it - 1)->hi;
}

}  // namespace detail

// General category L* or N*
inline bool is_word_char(char32_t cp) {
    return detail::in_ranges(unicode_tables::kWordChar,
                             unicode_tables::kWordChar_count, cp);
}

inline bool is_whitespace(char32_t cp) {
    return detail::in_ranges(unicode_tables::kWhitespace,
                             unicode_tables::kWhitespace_count, cp);
}

inline char32_t to_lower(char32_t cp) {
    using unicode_tables::kLowercase;
    using unicode_tables::kLowercase_count;
    auto* end = kLowercase + kLowercase_count;
    auto* it = std::lower_bound(kLowercase, end, cp,
                                [](const unicode_tables::Pair& p, char32_t v) {
                                    return p.from < v;
                                });
    if (it != end && it->from == cp) return it->to;
    return cp;
}

inline uint8_t combining_class(char32_t cp) {
    using unicode_tables::kCombiningClass;
    using unicode_tables::kCombiningClass_count;
    auto* end = kCombiningClass + kCombiningClass_count;
    auto* it = std::lower_bound(kCombiningClass, end, cp,
                                [](const unicode_tables::Ccc& c, char32_t v) {
                                    return c.cp < v;
                                });
    if (it != end && it->cp == cp) return it->ccc;
    return 0;
}

// --- NFC -------------------------------------------------------------------

namespace detail {

constexpr char32_t kSBase = 0xAC00, kLBase = 0x1100, kVBase = 0x1161,
                   kTBase = 0x11A7;
constexpr int kLCount = 19, kVCount = 21, kTCount = 28;
constexpr int kNCount = kVCount * kTCount;       // 588
constexpr int kSCount = kLCount * kNCount;       // 11172

inline void decompose_into(char32_t cp, std::vector<char32_t>& out) {
    if (cp >= kSBase && cp < kSBase + kSCount) {
        char32_t s = cp - kSBase;
        out.push_back(kLBase + s / kNCount);
        out.push_back(kVBase + (s % kNCount) / kTCount);
        if (s % kTCount) out.push_back(kTBase + s % kTCount);
        return;
    }
    using unicode_tables::kDecomposition;
    using unicode_tables::kDecomposition_count;
    auto* end = kDecomposition + kDecomposition_count;
    auto* it = std::lower_bound(
        kDecomposition, end, cp,
        [](const unicode_tables::Decomp& d, char32_t v) { return d.cp < v; });
    if (it != end && it->cp == cp) {
        for (int i = 0; i < it->len; ++i) out.push_back(it->to[i]);
        return;
    }
    out.push_back(cp);
}

inline char32_t compose_pair(char32_t a, char32_t b) {
    // Hangul LV / LVT
    if (a >= kLBase && a < kLBase + kLCount && b >= kVBase &&
        b < kVBase + kVCount) {
        return kSBase + ((a - kLBase) * kVCount + (b - kVBase)) * kTCount;
    }
    if (a >= kSBase && a < kSBase + kSCount && (a - kSBase) % kTCount == 0 &&
        b > kTBase && b < kTBase + kTCount) {
        return a + (b - kTBase);
    }
    using unicode_tables::kComposition;
    using unicode_tables::kComposition_count;
    auto* end = kComposition + kComposition_count;
    auto* it = std::lower_bound(
        kComposition, end, std::pair<char32_t, char32_t>{a, b},
        [](const unicode_tables::Comp& c, const std::pair<char32_t, char32_t>& v) {
            return c.first != v.first ? c.first < v.first : c.second < v.second;
        });
    if (it != end && it->first == a && it->second == b) return it->composite;
    return 0;
}

}  // namespace detail

inline std::vector<char32_t> nfc(const std::vector<char32_t>& input) {
    // 1. full canonical decomposition
    std::vector<char32_t> buf;
    buf.reserve(input.size() + 8);
    for (char32_t cp : input) detail::decompose_into(cp, buf);

    // 2. canonical ordering of combining marks
    for (size_t i = 1; i < buf.size(); ++i) {
        uint8_t cc = combining_class(buf[i]);
        if (cc == 0) continue;
        size_t j = i;
        while (j > 0) {
            uint8_t prev = combining_class(buf[j - 1]);
            if (prev == 0 || prev <= cc) break;
            std::swap(buf[j - 1], buf[j]);
            --j;
        }
    }

    // 3. canonical composition
    if (buf.empty()) return buf;
    std::vector<char32_t> out;
    out.reserve(buf.size());
    ptrdiff_t starter = -1;
    uint8_t last_cc = 0;
    for (char32_t cp : buf) {
        uint8_t cc = combining_class(cp);
        if (starter >= 0 && (last_cc < cc || last_cc == 0)) {
            if (char32_t comp = detail::compose_pair(out[starter], cp)) {
                out[starter] = comp;
                continue;
            }
        }
        if (cc == 0) {
            starter = static_cast<ptrdiff_t>(out.size());
            last_cc = 0;
        } else {
            last_cc = cc;
        }
        out.push_back(cp);
    }
    return out;
}

inline std::string nfc(std::string_view s) {
    return encode_utf8(nfc(decode_utf8(s)));
}

}  // namespace adaptkw::unicode
