#!/usr/bin/env python3
"""Regenerates the bundled fixtures in fixtures/. Output is deterministic."""

import json
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "fixtures"

MARKERS = {
    "Negative": ["struggled", "depressed", "scared", "anxious", "lonely", "hopeless", "miserable", "afraid",
                 "exhausted", "hurts", "crying", "ashamed"],
    "Positive": ["happy", "confident", "grateful", "excited", "wonderful", "amazing", "thankful", "comfortable",
                 "supportive", "beautiful", "celebrate", "finally"],
    "Neutral": ["question", "anyone", "anything", "appointment", "information", "schedule", "process", "asking",
                "curious", "forms", "insurance", "advice"],
}
DOMINANT = {"Negative": "dysphoria", "Positive": "proud", "Neutral": "wondering"}
FILLER = ["trans", "transgender", "hormones", "doctor", "friends", "family", "today", "really", "just", "feel",
          "time", "people", "know", "think", "name", "week", "started", "months", "therapy", "hrt", "coming", "out",
          "my", "the", "a", "and", "i", "to", "about", "with", "been", "have", "this", "so", "at", "work", "home",
          "voice", "clothes", "partner", "online", "reddit", "post", "life", "year"]
LABELS = ["Negative", "Positive", "Neutral"]


def sentence(rng, label, dominant_rate=0.7):
    words = [rng.choice(FILLER) for _ in range(rng.randint(6, 14))]
    words += rng.sample(MARKERS[label], rng.randint(2, 3))
    if rng.random() < dominant_rate:
        words.append(DOMINANT[label])
    if rng.random() < 0.25:
        other = rng.choice([l for l in LABELS if l != label])
        words.append(rng.choice(MARKERS[other]))
    rng.shuffle(words)
    text = " ".join(words)
    return text[0].upper() + text[1:] + rng.choice([".", "!", "?", "..."])


def mixed(rng, a, b):
    return sentence(rng, a, dominant_rate=0.3) + " " + sentence(rng, b, dominant_rate=0.3)


def dump(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def write_lines(name, rows):
    (OUT / name).write_text("".join(dump(r) + "\n" for r in rows), encoding="utf-8")


def annotation_fixture():
    # (annotator1, annotator2, adjudication or None, count); the rows of the
    # primary-annotator agreement table and how each disagreement is settled.
    plan = [
        ("Negative", "Negative", None, 61),
        ("Positive", "Positive", None, 85),
        ("Neutral", "Neutral", None, 136),
        ("Negative", "Neutral", "Negative", 2),
        ("Negative", "Neutral", "Neutral", 7),
        ("Positive", "Negative", "Negative", 9),
        ("Positive", "Negative", None, 1),
        ("Positive", "Neutral", None, 6),
    ]
    rng = random.Random(20200317)
    cases = [(a, b, adj) for a, b, adj, n in plan for _ in range(n)]
    rng.shuffle(cases)

    comments, annotations_a, annotations_b, adjudications, gold = [], [], [], [], []
    t = 1_600_000_000_000
    for i, (a, b, adj) in enumerate(cases, start=1):
        cid = f"c{i:03d}"
        if a == b:
            label = a
            text = sentence(rng, label)
        elif adj is not None:
            label = adj
            text = sentence(rng, label, dominant_rate=0.5)
        else:
            label = None
            text = mixed(rng, a, b)
        comments.append({"id": cid, "text": text})
        annotations_a.append({"comment_id": cid, "annotator": "annotator1", "label": a, "timestamp": t + 2 * i})
        annotations_b.append({"comment_id": cid, "annotator": "annotator2", "label": b, "timestamp": t + 2 * i + 1})
        if adj is not None:
            adjudications.append({"comment_id": cid, "annotator": "annotator3", "label": adj,
                                  "timestamp": t + 10_000 + i})
        if label is not None:
            gold.append({"id": cid, "text": text, "label": label})

    write_lines("annotation_corpus.jsonl", comments)
    write_lines("annotations.jsonl", annotations_a + annotations_b + adjudications)
    write_lines("synthetic300.jsonl", gold)
    write_lines("unlabeled300.jsonl", [{"id": g["id"], "text": g["text"]} for g in gold])


def toy_fixture():
    # Four or five items per class, each carrying only its own class words.
    words = {"Negative": ["awful", "sad", "terrible", "gloomy"],
             "Positive": ["great", "joyful", "lovely", "bright"],
             "Neutral": ["table", "schedule", "forms", "monday"]}
    rng = random.Random(16)
    rows = []
    counts = {"Negative": 5, "Positive": 5, "Neutral": 6}
    i = 0
    for label in LABELS:
        for _ in range(counts[label]):
            i += 1
            toks = rng.sample(words[label], 3) + [rng.choice(words[label])]
            rows.append({"id": f"toy{i:02d}", "text": " ".join(toks), "label": label})
    write_lines("toy16.jsonl", rows)


if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    annotation_fixture()
    toy_fixture()
