#!/usr/bin/env python3
"""Generates include/adaptkw/unicode_tables.hpp from Python's unicodedata.

Emits static tables for:
  - word characters (general category L* or N*), as codepoint ranges
  - whitespace, as codepoint ranges
  - simple lowercase mappings (1:1 only)
  - canonical combining classes (nonzero only)
  - fully expanded canonical decompositions (Hangul excluded, handled
    algorithmically at runtime)
  - primary composite pairs for canonical composition (Hangul excluded)

Run from the repository root:  python3 scripts/gen_unicode_tables.py
"""

import sys
import unicodedata

MAX_CP = 0x10FFFF
HANGUL_S_BASE, HANGUL_S_COUNT = 0xAC00, 11172
OUT = "include/adaptkw/unicode_tables.hpp"


def is_hangul_syllable(cp):
    return HANGUL_S_BASE <= cp < HANGUL_S_BASE + HANGUL_S_COUNT


def ranges_from_predicate(pred):
    ranges = []
    start = None
    for cp in range(MAX_CP + 1):
        if 0xD800 <= cp <= 0xDFFF:
            ok = False
        else:
            ok = pred(cp)
        if ok and start is None:
            start = cp
        elif not ok and start is not None:
            ranges.append((start, cp - 1))
            start = None
    if start is not None:
        ranges.append((start, MAX_CP))
    return ranges


def canonical_decomposition(cp):
    d = unicodedata.decomposition(chr(cp))
    if not d or d.startswith("<"):
        return None
    return [int(x, 16) for x in d.split()]


def full_decomposition(cp, memo):
    if cp in memo:
        return memo[cp]
    d = canonical_decomposition(cp)
    if d is None or is_hangul_syllable(cp):
        memo[cp] = [cp]
        return memo[cp]
    out = []
    for part in d:
        out.extend(full_decomposition(part, memo))
    memo[cp] = out
    return out


def main():
    word_ranges = ranges_from_predicate(
        lambda cp: unicodedata.category(chr(cp))[0] in ("L", "N"))
    space_ranges = ranges_from_predicate(lambda cp: chr(cp).isspace())

    lower_map = []
    for cp in range(MAX_CP + 1):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        lo = chr(cp).lower()
        if len(lo) == 1 and ord(lo) != cp:
            lower_map.append((cp, ord(lo)))

    ccc = []
    for cp in range(MAX_CP + 1):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        c = unicodedata.combining(chr(cp))
        if c:
            ccc.append((cp, c))

    memo = {}
    decomps = []
    maxlen = 0
    for cp in range(MAX_CP + 1):
        if 0xD800 <= cp <= 0xDFFF or is_hangul_syllable(cp):
            continue
        if canonical_decomposition(cp) is None:
            continue
        full = full_decomposition(cp, memo)
        maxlen = max(maxlen, len(full))
        decomps.append((cp, full))
    if maxlen > 4:
        sys.exit(f"decomposition longer than 4 ({maxlen}); widen the table")

    # Primary composites: canonical 2-element decompositions that Python's own
    # NFC recomposes, which filters the composition-exclusion set for us.
    comps = []
    for cp, full in decomps:
        d = canonical_decomposition(cp)
        if len(d) != 2:
            continue
        if unicodedata.combining(chr(d[0])):
            continue
        if unicodedata.normalize("NFC", chr(d[0]) + chr(d[1])) == chr(cp):
            comps.append((d[0], d[1], cp))
    comps.sort()

    with open(OUT, "w") as f:
        w = f.write
        w("// Generated by scripts/gen_unicode_tables.py "
          f"(unicodedata {unicodedata.unidata_version}). Do not edit.\n")
        w("#pragma once\n\n#include <cstdint>\n#include <cstddef>\n\n")
        w("namespace adaptkw::unicode_tables {\n\n")
        w("struct Range { uint32_t lo, hi; };\n")
        w("struct Pair { uint32_t from, to; };\n")
        w("struct Ccc { uint32_t cp; uint8_t ccc; };\n")
        w("struct Decomp { uint32_t cp; uint8_t len; uint32_t to[4]; };\n")
        w("struct Comp { uint32_t first, second, composite; };\n\n")

        def emit(name, ty, rows, fmt):
            w(f"inline constexpr {ty} {name}[] = {{\n")
            for i in range(0, len(rows), 6):
                w("    " + " ".join(fmt(r) for r in rows[i:i + 6]) + "\n")
            w("};\n")
            w(f"inline constexpr size_t {name}_count = "
              f"sizeof({name}) / sizeof({name}[0]);\n\n")

        emit("kWordChar", "Range", word_ranges,
             lambda r: f"{{{r[0]:#x},{r[1]:#x}}},")
        emit("kWhitespace", "Range", space_ranges,
             lambda r: f"{{{r[0]:#x},{r[1]:#x}}},")
        emit("kLowercase", "Pair", lower_map,
             lambda r: f"{{{r[0]:#x},{r[1]:#x}}},")
        emit("kCombiningClass", "Ccc", ccc,
             lambda r: f"{{{r[0]:#x},{r[1]}}},")
        emit("kDecomposition", "Decomp", decomps,
             lambda r: "{%#x,%d,{%s}}," % (
                 r[0], len(r[1]),
                 ",".join(f"{x:#x}" for x in (r[1] + [0] * 4)[:4])))
        emit("kComposition", "Comp", comps,
             lambda r: f"{{{r[0]:#x},{r[1]:#x},{r[2]:#x}}},")
        w("}  // namespace adaptkw::unicode_tables\n")

    print(f"wrote {OUT}: {len(word_ranges)} word ranges, "
          f"{len(space_ranges)} space ranges, {len(lower_map)} lowercase, "
          f"{len(ccc)} ccc, {len(decomps)} decompositions (maxlen {maxlen}), "
          f"{len(comps)} composites")


if __name__ == "__main__":
    main()
