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

"""Writes the small corpora used by the unit and acceptance tests.

Usage:
  generate.py                       writes every fixture except the parses
  generate.py parse REQUESTS OUT    rule-parses build-wikihow parse requests

Output is a fixed function of this file. The rule parser is a stand-in for
an external dependency parser: it emits well-formed ten-column parses from
word lists, nothing more.
"""

import json
import random
import re
import sys

HERE = __file__.rsplit("/", 1)[0] if "/" in __file__ else "."

CORE = [
    ("PersonX puts out a fire", [
        ("xWant", "to receive recognition"), ("xNeed", "to find a fire extinguisher"),
        ("xIntent", "to keep everyone safe"), ("xReact", "proud"), ("xEffect", "gets praised"),
        ("xAttr", "brave"), ("oWant", "to thank PersonX"), ("oReact", "grateful"),
        ("oEffect", "none")]),
    ("PersonX discovers the answer", [
        ("xReact", "accomplished"), ("xWant", "to share the answer"),
        ("xNeed", "to study the problem"), ("xIntent", "to solve the puzzle"), ("xAttr", "smart"),
        ("xEffect", "gets a good grade"), ("oReact", "impressed"),
        ("oWant", "to ask PersonX for help"), ("oEffect", "none")]),
    ("PersonX has to go to the dentist", [
        ("xNeed", "need to make an appointment"), ("xReact", "none")]),
    ("PersonX picks _ up from school", [
        ("xWant", "to drive kids home"), ("xNeed", "to get in the car"),
        ("xIntent", "to be a good parent"), ("xAttr", "caring"), ("oReact", "happy"),
        ("oWant", "to go home"), ("oEffect", "get a ride")]),
    ("PersonX gives PersonY a gift", [
        ("xWant", "to see PersonY smile"), ("xIntent", "to be nice"), ("oReact", "thankful"),
        ("oWant", "to open the gift"), ("xAttr", "generous"), ("xEffect", "spends money")]),
    ("PersonX loses PersonX's keys", [
        ("xReact", "frustrated"), ("xWant", "to find the keys"), ("xNeed", "to leave the house"),
        ("xEffect", "is late for work"), ("xAttr", "careless")]),
    ("PersonX boils water", [
        ("xNeed", "to fill a pot"), ("xIntent", "to make tea"), ("xWant", "to drink tea"),
        ("xEffect", "burns a finger")]),
    ("PersonX wins the game", [
        ("xReact", "happy"), ("oReact", "sad"), ("xWant", "to celebrate"),
        ("oWant", "to congratulate PersonX"), ("xAttr", "skilled"), ("oEffect", "lose the game")]),
    ("PersonX receives an award", [
        ("xReact", "proud"), ("xWant", "to thank everyone"), ("xNeed", "to work hard"),
        ("oReact", "happy for PersonX")]),
    ("PersonX forgets the birthday", [
        ("xReact", "guilty"), ("xWant", "to apologize"), ("oReact", "hurt"),
        ("oWant", "to remind PersonX")]),
]

VERBS = ["buys", "sells", "paints", "fixes", "borrows", "finds", "washes", "builds", "reads",
         "writes", "carries", "drops", "opens", "closes", "breaks", "orders", "hides", "shares"]
BASE = {"buys": "buy", "sells": "sell", "paints": "paint", "fixes": "fix", "borrows": "borrow",
        "finds": "find", "washes": "wash", "builds": "build", "reads": "read", "writes": "write",
        "carries": "carry", "drops": "drop", "opens": "open", "closes": "close", "breaks": "break",
        "orders": "order", "hides": "hide", "shares": "share"}
OBJECTS = ["a car", "the door", "a book", "the bike", "a letter", "the fence", "a phone",
           "the window", "a cake", "the dog", "a chair", "the garden"]
FEELINGS = ["happy", "tired", "relieved", "excited", "worried", "calm", "annoyed", "proud"]
TRAITS = ["helpful", "lazy", "clever", "patient", "curious", "honest", "messy", "kind"]
DIMS = ["xWant", "xNeed", "xIntent", "xReact", "xEffect", "xAttr", "oWant", "oReact", "oEffect"]
GENERIC = [
    ("The dog barks loudly", [("oReact", "startled"), ("oWant", "to calm the dog")]),
    ("It rains all day", [("oEffect", "gets wet"), ("oWant", "to stay inside")]),
    ("The store closes early", [("oReact", "annoyed"), ("oWant", "to find another store")]),
    ("The car breaks down", [("oEffect", "is stranded"), ("oWant", "to call a mechanic")]),
    ("The phone rings twice", [("oWant", "to answer the phone"), ("oReact", "curious")]),
]


def filler_inference(rng, dim, verb, obj):
    other_verb = BASE[rng.choice(VERBS)]
    other_obj = rng.choice(OBJECTS)
    if dim in ("xWant", "oWant"):
        return f"to {other_verb} {other_obj}"
    if dim == "xNeed":
        return f"to get {obj}"
    if dim == "xIntent":
        return f"to {BASE[verb]} something"
    if dim in ("xReact", "oReact"):
        return rng.choice(FEELINGS)
    if dim == "xAttr":
        return rng.choice(TRAITS)
    return f"{rng.choice(VERBS)} {other_obj}"


def pairs_from(events):
    return [(e, d, i) for e, rows in events for d, i in rows]


def atomic_200():
    rng = random.Random(20261015)
    rows = pairs_from(CORE)
    rows.append(rows[0])  # exact duplicate of the first pair
    rows.append(("PersonX gives PersonY a gift", "xWant", "none"))
    rows += pairs_from(GENERIC)
    while len(rows) < 200:
        verb = rng.choice(VERBS)
        obj = rng.choice(OBJECTS)
        dim = rng.choice(DIMS)
        rows.append((f"PersonX {verb} {obj}", dim, filler_inference(rng, dim, verb, obj)))
    return rows


def atomic_50():
    rng = random.Random(50)
    rows = pairs_from(CORE[:3]) + pairs_from(GENERIC)
    while len(rows) < 50:
        verb = rng.choice(VERBS)
        obj = rng.choice(OBJECTS)
        dim = rng.choice(DIMS)
        subject = "PersonX" if rng.random() < 0.6 else "The neighbor"
        rows.append((f"{subject} {verb} {obj}", dim, filler_inference(rng, dim, verb, obj)))
    return rows


def write_tsv(name, rows):
    with open(f"{HERE}/{name}", "w", encoding="utf-8") as f:
        for r in rows:
            f.write("\t".join(r) + "\n")


def write_jsonl(name, records):
    with open(f"{HERE}/{name}", "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")


NAMES = ["Jordan", "Casey", "Riley", "Quinn", "Taylor", "Avery", "Skyler", "Morgan"]
NONSENSE = ["zorblax quenth", "plimvor snagget", "trezzik wobul", "fendral quaxx"]


def siqa_tasks():
    rng = random.Random(7)
    hand = [
        {"instance_id": "siqa-dentist",
         "question": "Jordan has to go to the dentist after school today. What will Jordan want to do next?",
         "candidates": ["drive the kids home", "eat a big cake", "zorblax quenth"], "gold_index": 0},
        {"instance_id": "siqa-fire",
         "question": "Casey put out a fire in the kitchen. What will Casey want to do next?",
         "candidates": ["receive recognition", "start another fire", "take a nap"], "gold_index": 0},
        {"instance_id": "siqa-twins",
         "question": "Riley won the game against Quinn. How would Quinn feel as a result?",
         "candidates": ["sad", "sad", "happy"], "gold_index": 0},
    ]
    events = CORE + GENERIC
    generated = []
    for n in range(33):
        event, rows = rng.choice(events)
        dim, truth = rng.choice(rows)
        name = rng.choice(NAMES)
        question = event.replace("PersonX's", name + "'s").replace("PersonX", name)
        question = question.replace("PersonY", rng.choice(NAMES)).replace(" _ ", " them ")
        question += ". What happens next?"
        cands = [truth]
        while len(cands) < 3:
            if rng.random() < 0.25:
                c = rng.choice(NONSENSE)
            else:
                c = rng.choice(rng.choice(events)[1])[1]
            if c not in cands:
                cands.append(c)
        gold = rng.randrange(3)
        cands[0], cands[gold] = cands[gold], cands[0]
        generated.append({"instance_id": f"siqa-{n:03d}", "question": question,
                          "candidates": cands, "gold_index": gold})
    train = hand[:2] + generated[:22]
    dev = hand[2:] + generated[22:]
    return train, dev


def assertions_100():
    """ConceptNet-style assertion rows, including duplicates and other languages."""
    rng = random.Random(100)
    en = ["keep", "get_rid", "fire", "water", "dentist", "appointment", "school", "kid", "home",
          "drive", "car", "boil", "egg", "pot", "tea", "cake", "door", "window", "key", "house",
          "recognition", "award", "gift", "game", "answer", "teeth", "money", "clean", "soap"]
    rels = ["Antonym", "RelatedTo", "IsA", "UsedFor", "AtLocation", "HasPrerequisite", "Synonym",
            "CapableOf"]
    fixed = [("Antonym", "keep", "get_rid", 2.0), ("Antonym", "fire", "water", 1.0),
             ("AtLocation", "dentist", "appointment", 1.5), ("UsedFor", "car", "drive", 3.0),
             ("AtLocation", "kid", "school", 2.0), ("RelatedTo", "home", "kid", 1.0),
             ("UsedFor", "pot", "boil", 2.5), ("RelatedTo", "egg", "boil", 1.0),
             ("UsedFor", "soap", "clean", 2.0), ("RelatedTo", "recognition", "award", 1.0)]
    rows = []

    def row(rel, h, t, w, hl="en", tl="en", suffix=""):
        meta = json.dumps({"dataset": "/d/fixture", "weight": w}, sort_keys=True)
        return (f"/a/[/r/{rel}/,/c/{hl}/{h}{suffix}/,/c/{tl}/{t}/]", f"/r/{rel}",
                f"/c/{hl}/{h}{suffix}", f"/c/{tl}/{t}", meta)

    for rel, h, t, w in fixed:
        rows.append(row(rel, h, t, w))
    rows.append(row("Antonym", "keep", "get_rid", 1.0))          # duplicate, lower weight
    rows.append(row("UsedFor", "car", "drive", 4.0))             # duplicate, higher weight
    rows.append(row("Antonym", "keep", "get_rid", 2.0, suffix="/v"))  # same concept, POS suffix
    rows.append(row("RelatedTo", "feu", "fire", 1.0, hl="fr"))   # non-English head
    rows.append(row("Synonym", "eau", "water", 1.0, hl="fr", tl="fr"))
    rows.append(row("RelatedTo", "water", "agua", 1.0, tl="es"))
    while len(rows) < 100:
        rel = rng.choice(rels)
        h, t = rng.sample(en, 2)
        w = rng.choice([0.5, 1.0, 1.0, 2.0, 3.0])
        if rng.random() < 0.08:
            rows.append(row(rel, h, rng.choice(["chat", "maison", "gato"]), w,
                            tl=rng.choice(["fr", "es"])))
        else:
            rows.append(row(rel, h, t, w))
    return rows


PIQA_TOPICS = [
    ("boil", "an egg"), ("clean", "a window"), ("fix", "a bike"), ("paint", "a fence"),
    ("wash", "a car"), ("bake", "a cake"), ("open", "a jar"), ("build", "a shelf"),
    ("plant", "a tree"), ("sharpen", "a knife"), ("fold", "a shirt"), ("make", "tea"),
    ("repair", "a chair"), ("cut", "an onion"), ("water", "a plant"), ("iron", "a dress"),
    ("pack", "a suitcase"), ("light", "a candle"), ("brew", "coffee"), ("peel", "an apple"),
]
EXTRA_VERBS = ["organize", "decorate", "store", "cook", "grow", "dry", "polish", "carry",
               "hang", "measure"]
EXTRA_OBJECTS = ["a garden", "a closet", "a lamp", "a rug", "a bowl", "a desk", "a mirror",
                 "a book", "a door", "a box", "a fan", "a cup"]
TOOLS = ["pot", "cloth", "wrench", "brush", "hose", "oven", "towel", "drill", "shovel", "stone",
         "board", "kettle", "glue", "knife", "can", "iron", "bag", "match", "filter", "peeler"]


def noun_of(obj):
    return obj.split()[-1]


def wikihow():
    rng = random.Random(31)
    articles = []
    seen = set()
    topics = list(PIQA_TOPICS)
    for v in EXTRA_VERBS:
        for o in EXTRA_OBJECTS:
            topics.append((v, o))
    for i, (verb, obj) in enumerate(topics[:100]):
        title = f"How to {verb.capitalize()} {obj.title().replace('An ', 'an ').replace('A ', 'a ')}"
        if title in seen:
            continue
        seen.add(title)
        tool = TOOLS[i % len(TOOLS)]
        noun = noun_of(obj)
        para = (f"Get a clean {tool} before you {verb} the {noun}. "
                f"Put the {noun} on a flat table. "
                f"Use the {tool} to {verb} the {noun} slowly. "
                f"Check the {noun} when you finish.")
        articles.append({"article_id": f"wh-{i:03d}", "title": title, "paragraph": para})
    train, dev = [], []
    for i, (verb, obj) in enumerate(PIQA_TOPICS):
        noun = noun_of(obj)
        tool = TOOLS[i % len(TOOLS)]
        wrong = TOOLS[(i + 7) % len(TOOLS)]
        goal = f"How do I {verb} {obj} at home?"
        cands = [f"Use a {tool} to {verb} the {noun}.", f"Put the {noun} in a {wrong} and wait."]
        gold = rng.randrange(2)
        if gold:
            cands.reverse()
        rec = {"instance_id": f"piqa-{i:03d}", "question": goal, "candidates": cands,
               "gold_index": gold}
        (train if i < 14 else dev).append(rec)
    return articles, train, dev


def native_csv():
    header = ["event", "oEffect", "oReact", "oWant", "xAttr", "xEffect", "xIntent", "xNeed",
              "xReact", "xWant", "prefix", "split"]

    def q(s):
        return '"' + s.replace('"', '""') + '"'

    rows = [
        ["PersonX puts out a fire", '["none"]', '["grateful"]', '["to thank PersonX"]',
         '["brave", "heroic"]', '["gets praised"]', '["to keep everyone safe"]',
         '["to find a fire extinguisher"]', '["proud"]', '["to receive recognition"]',
         '["fire"]', "trn"],
        ["PersonX says \"hello, friend\"", '[]', '["happy"]', '[]', '["friendly"]', '[]',
         '["to greet someone"]', '[]', '["cheerful"]', '["to chat"]', '["hello"]', "dev"],
        ["PersonX eats dinner", '["none"]', '["none"]', '["none"]', '["hungry"]',
         '["gets full"]', '["to eat"]', '["to cook food"]', '["satisfied"]', '["to rest"]',
         '["dinner"]', "trn"],
    ]
    with open(f"{HERE}/atomic_native.csv", "w", encoding="utf-8") as f:
        f.write(",".join(header) + "\n")
        for r in rows:
            f.write(",".join(q(c) for c in r) + "\n")


# --- rule parser -------------------------------------------------------------

PARSE_VERBS = {v for v, _ in PIQA_TOPICS} | set(EXTRA_VERBS) | {
    "get", "put", "use", "check", "finish", "wait"}
DETS = {"a", "an", "the"}
ADPS = {"on", "in", "at", "to", "before", "when", "with", "of"}
PRONS = {"i", "you", "it"}
AUXES = {"do", "does"}
ADJS = {"clean", "flat"}
ADVS = {"how", "slowly", "home"}


def tag(word, prev):
    w = word.lower()
    if not re.match(r"\w", w):
        return "PUNCT"
    if w in DETS:
        return "DET"
    if w in AUXES:
        return "AUX"
    if w in PRONS:
        return "PRON"
    if w == "to" and prev is not None:
        return "PART"
    if w in ADPS:
        return "ADP"
    if w in ADVS:
        return "ADV"
    if w in ADJS and prev in ("DET", None):
        return "ADJ"
    if w in PARSE_VERBS and prev not in ("DET", "ADJ"):
        return "VERB"
    return "NOUN"


def parse_sentence(text):
    words = re.findall(r"\w+|[^\w\s]", text)
    tags = []
    for w in words:
        tags.append(tag(w, tags[-1] if tags else None))
    verbs = [i for i, t in enumerate(tags) if t == "VERB"]
    root = verbs[0] if verbs else next((i for i, t in enumerate(tags) if t == "NOUN"), 0)
    heads, rels = [0] * len(words), [""] * len(words)
    for i, t in enumerate(tags):
        if i == root:
            heads[i], rels[i] = 0, "root"
            continue
        nxt_noun = next((j for j in range(i + 1, len(words)) if tags[j] == "NOUN"), None)
        prev_verb = max((j for j in verbs if j < i), default=root)
        if t in ("DET", "ADJ", "ADP") and nxt_noun is not None:
            heads[i], rels[i] = nxt_noun, {"DET": "det", "ADJ": "amod", "ADP": "case"}[t]
        elif t == "NOUN":
            direct = all(tags[k] in ("DET", "ADJ") for k in range(prev_verb + 1, i))
            heads[i], rels[i] = prev_verb, "obj" if direct and prev_verb < i else "obl"
        elif t == "VERB":
            heads[i], rels[i] = root, "advcl"
        elif t == "PUNCT":
            heads[i], rels[i] = root, "punct"
        else:
            heads[i], rels[i] = root, {"AUX": "aux", "PRON": "nsubj", "ADV": "advmod",
                                       "PART": "mark"}.get(t, "dep")
        if heads[i] == i:
            heads[i], rels[i] = root, "dep"
    lines = []
    for i, w in enumerate(words):
        lemma = w.lower()
        head = 0 if heads[i] == 0 and i == root else heads[i] + 1
        lines.append(f"{i + 1}\t{w}\t{lemma}\t{tags[i]}\t_\t_\t{head}\t{rels[i]}\t_\t_")
    return lines


def parse_requests(requests_path, out_path):
    with open(requests_path, encoding="utf-8") as f, open(out_path, "w", encoding="utf-8") as out:
        for line in f:
            if not line.strip():
                continue
            r = json.loads(line)
            out.write(f"# instance_id = {r['instance_id']}\n# source = {r['source']}\n")
            out.write("\n".join(parse_sentence(r["text"])) + "\n\n")


def main():
    if len(sys.argv) == 4 and sys.argv[1] == "parse":
        parse_requests(sys.argv[2], sys.argv[3])
        return
    write_tsv("atomic_200.tsv", atomic_200())
    write_tsv("atomic_50.tsv", atomic_50())
    train, dev = siqa_tasks()
    write_jsonl("siqa_train.jsonl", train)
    write_jsonl("siqa_dev.jsonl", dev)
    write_tsv("conceptnet_100.csv", assertions_100())
    articles, ptrain, pdev = wikihow()
    write_jsonl("wikihow_articles.jsonl", articles)
    write_jsonl("piqa_train.jsonl", ptrain)
    write_jsonl("piqa_dev.jsonl", pdev)
    native_csv()


if __name__ == "__main__":
    main()
