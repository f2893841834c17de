#!/usr/bin/env python3
# Copyright 2026 The DISC Toolkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled character tables under data/.

Sources:
  * pypinyin (MIT): per-character readings, heteronyms included.
  * char_similar 0.0.2 (Apache-2.0): four-corner codes, five-class stroke
    orders, one-level component splits and structure classes.

Usage:
  pip download --no-deps pypinyin char-similar==0.0.2 -d /tmp/wheels
  python3 -m zipfile -e /tmp/wheels/pypinyin-*.whl /tmp/pp
  python3 -m zipfile -e /tmp/wheels/char_similar-*.whl /tmp/cs
  python3 scripts/build_char_tables.py --pypinyin /tmp/pp \
      --char-similar /tmp/cs/char_similar/data --out data --size 3500

Pointing --size at a larger number (or 0 for everything) produces the
full-dictionary variant; the loader does not care about table size.
"""

import argparse
import json
import os
import sys
import unicodedata

# char_similar structure class -> (letter, name). 0 is atomic.
STRUCTURES = {
    "1": ("B", "LeftRight"),
    "2": ("C", "UpDown"),
    "3": ("D", "LeftMiddleRight"),
    "4": ("E", "UpMiddleDown"),
    "5": ("F", "EnclosureUpperRight"),
    "6": ("G", "EnclosureUpperLeft"),
    "7": ("H", "EnclosureLowerLeft"),
    "8": ("I", "EnclosureTop"),
    "9": ("J", "EnclosureBottom"),
    "10": ("K", "EnclosureLeft"),
    "11": ("L", "EnclosureFull"),
    "12": ("M", "Overlaid"),
    "13": ("N", "Triangle"),
}

# Five-class stroke digits: heng, shu, pie, dian, zhe.
STROKES = {"1": "一", "2": "丨", "3": "ノ", "4": "、", "5": "𠃌"}

# Characters used by the worked examples and the test fixtures.
EXTRA = (
    "忠仲中心人入木本读度少睛镜行记得戴眼从商场的口进去空日"
    "亻囚国回问句十大太犬天夫"
)


def is_han(ch):
    if len(ch) != 1:
        return False
    cp = ord(ch)
    return (0x4E00 <= cp <= 0x9FFF or 0x3400 <= cp <= 0x4DBF
            or 0x20000 <= cp <= 0x323AF)


def strip_tone(syllable):
    out = []
    for ch in unicodedata.normalize("NFD", syllable):
        if unicodedata.category(ch) == "Mn":
            if ch == "̈":  # combining diaeresis: u-umlaut
                out[-1] = "v"
            continue
        out.append(ch)
    s = "".join(out).lower().replace("ü", "v")
    return "".join(c for c in s if "a" <= c <= "z")


def load_json(path):
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pypinyin", required=True)
    ap.add_argument("--char-similar", required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--size", type=int, default=3500)
    args = ap.parse_args()

    sys.path.insert(0, args.pypinyin)
    from pypinyin.pinyin_dict import pinyin_dict

    d = args.char_similar
    fourangle = load_json(os.path.join(d, "char_fourangle.dict"))
    order = load_json(os.path.join(d, "char_order.dict"))
    split = load_json(os.path.join(d, "char_stroke.dict"))
    struct = load_json(os.path.join(d, "char_struct.dict"))
    freq = load_json(os.path.join(d, "char_frequency.dict"))

    def readings(ch):
        raw = pinyin_dict.get(ord(ch))
        if not raw:
            return []
        seen = []
        for syl in raw.split(","):
            s = strip_tone(syl)
            if s and s not in seen:
                seen.append(s)
        return seen

    def complete(ch):
        return (is_han(ch) and readings(ch) and ch in fourangle
                and ch in order and ch in struct)

    ranked = sorted((c for c in freq if complete(c)),
                    key=lambda c: (-freq[c], ord(c)))
    if args.size > 0:
        ranked = ranked[:args.size]
    charset = list(dict.fromkeys(ranked + [c for c in EXTRA if complete(c)]))

    def decomposition(ch):
        cls = struct.get(ch)
        comps = split.get(ch, [])
        if cls is None:
            return None
        if cls == "0" or len(comps) < 2 or cls not in STRUCTURES:
            return ("A", "")
        return (STRUCTURES[cls][0], "".join(comps))

    # Components referenced by structure-aware encoding join the bundle.
    universe = list(charset)
    seen = set(universe)
    pending = list(charset)
    while pending:
        dec = decomposition(pending.pop())
        if dec and dec[0] != "A":
            for comp in dec[1]:
                if comp not in seen:
                    seen.add(comp)
                    universe.append(comp)
                    pending.append(comp)
    universe.sort(key=ord)

    os.makedirs(args.out, exist_ok=True)
    missing = []
    with open(os.path.join(args.out, "pinyin.tsv"), "w", encoding="utf-8") as py_f, \
         open(os.path.join(args.out, "fourcorner.tsv"), "w", encoding="utf-8") as fc_f, \
         open(os.path.join(args.out, "decomp.tsv"), "w", encoding="utf-8") as de_f, \
         open(os.path.join(args.out, "strokes.tsv"), "w", encoding="utf-8") as st_f:
        py_f.write("# toneless pinyin readings (pypinyin)\n")
        fc_f.write("# four-corner codes, first four digits (char_similar)\n")
        de_f.write("#alphabet: " + ",".join(
            f"{letter}={name}" for letter, name in STRUCTURES.values()) + "\n")
        st_f.write("#strokes: " + "".join(STROKES.values()) + "\n")
        for ch in universe:
            absent = []
            r = readings(ch) if is_han(ch) else []
            if r:
                py_f.write(f"{ch}\t{','.join(r)}\n")
            else:
                absent.append("pinyin")
            fc = fourangle.get(ch, "")
            if len(fc) >= 4 and fc[:4].isdigit():
                fc_f.write(f"{ch}\t{fc[:4]}\n")
            else:
                absent.append("fourcorner")
            dec = decomposition(ch)
            if dec:
                de_f.write(f"{ch}\t{dec[0]}\t{dec[1]}\n")
            else:
                absent.append("decomp")
            seq = order.get(ch, "")
            if seq and all(c in STROKES for c in seq):
                st_f.write(f"{ch}\t{''.join(STROKES[c] for c in seq)}\n")
            else:
                absent.append("strokes")
            if absent:
                missing.append((ch, absent))

    with open(os.path.join(args.out, "missing.txt"), "w", encoding="utf-8") as f:
        f.write("# characters in the bundle lacking one or more table entries\n")
        for ch, absent in missing:
            f.write(f"{ch}\t{','.join(absent)}\n")
    with open(os.path.join(args.out, "charset.txt"), "w", encoding="utf-8") as f:
        for ch in sorted(charset, key=ord):
            f.write(ch + "\n")
    print(f"charset={len(charset)} bundled={len(universe)} missing={len(missing)}",
          file=sys.stderr)


if __name__ == "__main__":
    main()
