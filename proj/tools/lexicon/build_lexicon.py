#!/usr/bin/env python3
# Copyright 2026 The kgmatch Authors.
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
"""Derives the lemma, POS and antonym tables shipped in resources/lexicon.

Usage: build_lexicon.py WORDNET_DICT_DIR OUT_DIR

WORDNET_DICT_DIR holds the WordNet 3.0 database files (index.*, data.*,
*.exc). The output is a deterministic function of those files plus
OUT_DIR/curated.tsv, whose rows are emitted first.
"""

import collections
import os
import re
import sys

POS_FILES = [("noun", "NOUN"), ("verb", "VERB"), ("adj", "ADJ"), ("adv", "ADV")]
POS_ORDER = {"NOUN": 0, "VERB": 1, "ADJ": 2, "ADV": 3}
WORD = re.compile(r"^[a-z]+$")

CLOSED_CLASS = {
    "DET": "a an the this that these those some any each every no another".split(),
    "PRON": ("i me my mine you your yours he him his she her hers it its we us our "
             "ours they them their theirs myself yourself himself herself itself "
             "ourselves themselves who whom whose which what someone something "
             "anyone anything everyone everything nobody nothing").split(),
    "ADP": ("of in on at by for with about against between into through during "
            "before after above below to from up down out off over under again "
            "than as until while upon within without toward towards").split(),
    "CONJ": "and but or nor so yet if because although though whether".split(),
    "AUX": ("be is are was were been being am have has had having do does did "
            "will would shall should can could may might must").split(),
    "PART": "not n't".split(),
}


def read_index(path, pos):
    entries = {}
    with open(path, encoding="latin-1") as f:
        for line in f:
            if line.startswith(" "):
                continue
            parts = line.split()
            lemma = parts[0]
            p_cnt = int(parts[3])
            tagsense = int(parts[5 + p_cnt])
            offsets = parts[6 + p_cnt:]
            entries[lemma] = (tagsense, offsets)
    return entries


def read_data(path):
    synsets = {}
    with open(path, encoding="latin-1") as f:
        for line in f:
            if line.startswith(" "):
                continue
            fields = line.split(" | ")[0].split()
            offset = fields[0]
            w_cnt = int(fields[3], 16)
            words = [fields[4 + 2 * i].lower() for i in range(w_cnt)]
            i = 4 + 2 * w_cnt
            p_cnt = int(fields[i])
            ptrs = []
            for j in range(p_cnt):
                sym, tgt, tpos, st = fields[i + 1 + 4 * j:i + 5 + 4 * j]
                ptrs.append((sym, tgt, tpos, int(st[:2], 16), int(st[2:], 16)))
            synsets[offset] = (words, ptrs)
    return synsets


def read_exc(path):
    out = []
    with open(path, encoding="latin-1") as f:
        for line in f:
            parts = line.split()
            if len(parts) >= 2:
                out.append((parts[0], parts[1]))
    return out


def strip_marker(word):
    return re.sub(r"\(.*\)$", "", word)


def verb_forms(v):
    forms = []
    if re.search(r"(s|x|z|ch|sh|[^aeiou]o)$", v):
        forms.append(v + "es")
    elif re.search(r"[^aeiou]y$", v):
        forms.append(v[:-1] + "ies")
    else:
        forms.append(v + "s")
    cvc = re.search(r"[^aeiou][aeiou][bdgklmnprt]$", v) and len(v) <= 4
    if v.endswith("e"):
        forms += [v + "d", v[:-1] + "ing"]
    elif re.search(r"[^aeiou]y$", v):
        forms += [v[:-1] + "ied", v + "ing"]
    elif cvc:
        forms += [v + v[-1] + "ed", v + v[-1] + "ing"]
    else:
        forms += [v + "ed", v + "ing"]
    return forms


def noun_forms(n):
    if re.search(r"(s|x|z|ch|sh)$", n):
        return [n + "es"]
    if re.search(r"[^aeiou]y$", n):
        return [n[:-1] + "ies"]
    return [n + "s"]


def main():
    wn_dir, out_dir = sys.argv[1], sys.argv[2]
    index = {}
    data = {}
    for name, tag in POS_FILES:
        index[tag] = read_index(os.path.join(wn_dir, "index." + name), tag)
        data[tag] = read_data(os.path.join(wn_dir, "data." + name))
    tag_of = {"n": "NOUN", "v": "VERB", "a": "ADJ", "s": "ADJ", "r": "ADV"}
    ss_tag = {"1": "NOUN", "2": "VERB", "3": "ADJ", "4": "ADV", "5": "ADJ"}

    # Corpus frequency per (lemma, POS), summed over senses.
    freq = collections.Counter()
    with open(os.path.join(wn_dir, "index.sense"), encoding="latin-1") as f:
        for line in f:
            key, _, _, cnt = line.split()
            lemma, rest = key.split("%")
            freq[(lemma, ss_tag[rest[0]])] += int(cnt)

    def tagcount(lemma, tag):
        if lemma not in index[tag]:
            return -1
        return freq[(lemma, tag)]

    # Antonyms: direct lexical pointers in sense order, then antonyms reached
    # through derivationally related forms.
    direct = collections.OrderedDict()
    deriv = collections.OrderedDict()
    for tag in ("VERB", "NOUN", "ADJ", "ADV"):
        for lemma in sorted(index[tag]):
            if not WORD.match(lemma):
                continue
            for off in index[tag][lemma][1]:
                words, ptrs = data[tag][off]
                src = [strip_marker(w) for w in words]
                if lemma not in src:
                    continue
                k = src.index(lemma) + 1
                for sym, tgt, tpos, s, t in ptrs:
                    if s != k or t == 0:
                        continue
                    twords = data[tag_of[tpos]][tgt][0]
                    target = strip_marker(twords[t - 1])
                    if not WORD.match(target) or target == lemma:
                        continue
                    if sym == "!":
                        direct.setdefault(lemma, []).append(target)
                    elif sym == "+":
                        deriv.setdefault(lemma, []).append(target)
    antonyms = collections.OrderedDict()
    for lemma, ants in direct.items():
        antonyms[lemma] = list(dict.fromkeys(ants))
    for lemma, rel in deriv.items():
        if lemma in antonyms:
            continue
        found = []
        for r in rel:
            found += direct.get(r, [])
        if found:
            antonyms[lemma] = list(dict.fromkeys(found))

    # Lemma table: inflected surface -> base lemma, best-attested first.
    lemmas = collections.defaultdict(list)
    known = set()
    for tag in index:
        known.update(l for l in index[tag] if WORD.match(l))

    def add(surface, base, tag):
        if surface == base or not WORD.match(surface):
            return
        own = max(tagcount(surface, t) for t in index)
        if surface in known and own >= tagcount(base, tag):
            return
        lemmas[surface].append((-max(tagcount(base, tag), 0), POS_ORDER[tag], base, tag))

    for name, tag in POS_FILES:
        for surface, base in read_exc(os.path.join(wn_dir, name + ".exc")):
            if WORD.match(base):
                add(surface, base, tag)
    for lemma in index["NOUN"]:
        if WORD.match(lemma):
            for f in noun_forms(lemma):
                add(f, lemma, "NOUN")
    for lemma in index["VERB"]:
        if WORD.match(lemma):
            for f in verb_forms(lemma):
                add(f, lemma, "VERB")

    # POS: most attested analysis of each surface form.
    pos = {}
    analyses = collections.defaultdict(list)
    for tag in index:
        for lemma in index[tag]:
            if WORD.match(lemma):
                analyses[lemma].append((-tagcount(lemma, tag), POS_ORDER[tag], tag))
    for surface, rows in lemmas.items():
        for negcnt, order, base, tag in rows:
            analyses[surface].append((negcnt, order, tag))
    for surface, rows in analyses.items():
        pos[surface] = sorted(rows)[0][2]
    for tag, words in CLOSED_CLASS.items():
        for w in words:
            pos[w] = tag

    curated = {"lemma": [], "antonym": [], "pos": []}
    with open(os.path.join(out_dir, "curated.tsv"), encoding="utf-8") as f:
        for line in f:
            if not line.strip() or line.startswith("#"):
                continue
            kind, key, value = line.rstrip("\n").split("\t")
            curated[kind].append((key, value))

    with open(os.path.join(out_dir, "lemmas.tsv"), "w", encoding="utf-8") as f:
        for key, value in curated["lemma"]:
            f.write(f"{key}\t{value}\n")
        for surface in sorted(lemmas):
            seen = set()
            for _, _, base, _ in sorted(lemmas[surface]):
                if base not in seen:
                    seen.add(base)
                    f.write(f"{surface}\t{base}\n")
    with open(os.path.join(out_dir, "antonyms.tsv"), "w", encoding="utf-8") as f:
        for key, value in curated["antonym"]:
            f.write(f"{key}\t{value}\n")
        for lemma in sorted(antonyms):
            for a in antonyms[lemma]:
                f.write(f"{lemma}\t{a}\n")
    pinned = dict(curated["pos"])
    with open(os.path.join(out_dir, "pos.tsv"), "w", encoding="utf-8") as f:
        for key, value in curated["pos"]:
            f.write(f"{key}\t{value}\n")
        for surface in sorted(pos):
            if surface not in pinned:
                f.write(f"{surface}\t{pos[surface]}\n")


if __name__ == "__main__":
    main()
