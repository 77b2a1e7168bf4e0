#!/usr/bin/env python3
"""Generate the deterministic test embedding table (word2vec text format).

Content words are grouped into orthogonal semantic clusters (cluster center =
one basis vector, plus small seeded noise). Stop-ish words get tiny-norm
random vectors so they barely shift phrase means. Filler tokens pad the
vocabulary to ~2000 entries. Regenerate with:

    python3 scripts/make_embeddings.py > data/embeddings/mini.txt
"""

import math
import random

DIM = 32
NOISE = 0.12
SEED = 20260401

CLUSTERS = {
    0: ["office", "offices", "professor", "professors", "faculty", "prof"],
    1: ["desk", "desks", "student", "students", "cubicle", "cubicles", "study",
        "studying", "undergraduate", "intern", "interns"],
    2: ["robot", "robots", "robotics", "workspace", "machine", "machines",
        "mechanical", "engineering", "arm", "drone"],
    3: ["sofa", "couch", "rest", "resting", "relax", "relaxing", "lounge",
        "break", "nap", "napping"],
    4: ["kitchen", "cooking", "cook", "cooks", "dinner", "food", "meal",
        "stove", "chef", "baking"],
    5: ["living", "tv", "television", "watching", "show", "movie"],
    6: ["bedroom", "bed", "beds", "sleep", "sleeping", "bedtime", "pajamas"],
    7: ["meeting", "meetings", "conference, presentation", "discussion",
        "presentation", "boardroom", "whiteboard"],
    8: ["open", "space", "commons", "atrium", "hall"],
    9: ["printer", "printers", "copier", "copy", "printing", "scanner"],
    10: ["dining", "dine", "table", "eating", "eat", "eats"],
    11: ["bathroom", "bath", "toilet", "shower", "sink"],
    12: ["manager", "employer", "boss", "executive", "director"],
    13: ["employee", "employees", "work", "works", "working", "staff",
         "worker", "job", "paperwork", "computer", "laptop"],
    14: ["vr", "headset", "headsets", "virtual", "reality"],
    15: ["ai", "artificial", "intelligence", "learning", "research",
         "researcher", "researchers", "paper", "papers"],
}

STOPISH = [
    "the", "and", "can", "be", "found", "in", "at", "on", "is", "are", "an",
    "for", "with", "near", "by", "usually", "often", "likely", "place",
    "places", "location", "located", "around", "inside", "check", "look",
    "find", "you", "will", "they", "them", "he", "she", "person", "people",
    "go", "goes", "stays", "sits", "spends", "time", "most", "their", "there",
    "where", "who", "that", "this", "it", "his", "her", "try", "area",
    "areas", "room", "rooms", "lab", "someone", "probably", "might", "may",
    "could", "would", "should", "but", "not", "always", "sometimes", "also",
    "or", "to", "of", "from", "during", "day", "spend", "spending", "when",
    "taking", "doing", "having", "works?", "about", "belongs", "certain",
]


def norm(v):
    return math.sqrt(sum(x * x for x in v))


def unit(v):
    n = norm(v)
    return [x / n for x in v]


def main():
    rng = random.Random(SEED)
    rows = []
    seen = set()

    def add(word, vec):
        word = "".join(ch for ch in word.lower() if ch.isalnum())
        if len(word) < 2 or word in seen:
            return
        seen.add(word)
        rows.append((word, vec))

    for cid, words in CLUSTERS.items():
        for raw in words:
            for word in raw.replace(",", " ").split():
                base = [0.0] * DIM
                base[cid] = 1.0
                vec = unit([b + NOISE * rng.gauss(0, 1) for b in base])
                add(word, vec)

    for word in STOPISH:
        vec = [0.05 * rng.gauss(0, 1) / math.sqrt(DIM) for _ in range(DIM)]
        add(word, vec)

    i = 0
    while len(rows) < 2000:
        i += 1
        vec = [rng.gauss(0, 1) for _ in range(DIM)]
        scale = rng.uniform(0.3, 0.8)
        vec = [scale * x for x in unit(vec)]
        add(f"w{i:04d}", vec)

    print(f"{len(rows)} {DIM}")
    for word, vec in rows:
        print(word + " " + " ".join(f"{x:.6f}" for x in vec))


if __name__ == "__main__":
    main()
