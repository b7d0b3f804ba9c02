"""Shared corpus builders for the test suite."""

import json
import random

import pytest

from graphaug.corpus import parse_corpus

# Content-word pools for synthetic corpora. None of these are stopwords.
WORD_POOL = [
    "music", "guitar", "piano", "concert", "band", "song", "album",
    "travel", "mountain", "river", "forest", "camping", "hiking", "trail",
    "cooking", "recipe", "garlic", "pasta", "oven", "dinner", "spice",
    "football", "match", "goal", "coach", "stadium", "league", "player",
    "painting", "canvas", "gallery", "portrait", "artist", "brush",
]

ENTITY_POOL = ["Tesla", "Avalon", "Marconi", "Vienna", "Boston", "Zelda"]

TOPIC_POOL = ["music", "travel", "cooking", "football", "painting"]


def make_turn(rng, speaker, entity=None, with_knowledge=False):
    words = rng.sample(WORD_POOL, rng.randint(3, 6))
    if entity is not None:
        # Mid-sentence so the capitalization heuristic picks it up.
        words.insert(rng.randint(1, len(words)), entity)
    text = "We enjoy " + " and ".join(words) + "."
    knowledge = []
    if with_knowledge:
        knowledge.append("The topic covers " + " plus ".join(rng.sample(WORD_POOL, 3)) + ".")
    return {"speaker": speaker, "text": text, "knowledge": knowledge}


def make_synthetic_corpus_data(n_dialogues=20, seed=7):
    """Deterministic synthetic corpus with mid-sentence entities and knowledge.

    Dialogue 0 opens with a 600-token turn so source truncation is exercised.
    """
    rng = random.Random(seed)
    dialogues = []
    for i in range(n_dialogues):
        turns = []
        n_turns = rng.randint(2, 5)
        for t in range(n_turns):
            speaker = "apprentice" if t % 2 == 0 else "wizard"
            entity = rng.choice(ENTITY_POOL) if rng.random() < 0.6 else None
            turns.append(make_turn(rng, speaker, entity, with_knowledge=rng.random() < 0.4))
        if i == 0:
            long_text = " ".join(f"blah{j}" for j in range(598)) + " about Tesla"
            turns.insert(0, {"speaker": "apprentice", "text": long_text, "knowledge": []})
        dialogues.append({
            "id": f"dlg-{i:03d}",
            "topic": rng.choice(TOPIC_POOL),
            "turns": turns,
        })
    return {"dialogues": dialogues}


@pytest.fixture
def synthetic_corpus():
    return parse_corpus(make_synthetic_corpus_data())


@pytest.fixture
def synthetic_corpus_file(tmp_path):
    path = tmp_path / "corpus.json"
    path.write_text(json.dumps(make_synthetic_corpus_data()), encoding="utf-8")
    return path


def tiny_corpus_data():
    """1 dialogue, 2 turns, 1 knowledge passage -> 3 documents."""
    return {
        "dialogues": [
            {
                "id": "d1",
                "topic": "paris",
                "turns": [
                    {"speaker": "apprentice", "text": "I love Paris.", "knowledge": []},
                    {"speaker": "wizard", "text": "Paris is the capital of France.",
                     "knowledge": ["Paris is the capital city of France."]},
                ],
            }
        ]
    }


@pytest.fixture
def tiny_corpus_file(tmp_path):
    path = tmp_path / "tiny.json"
    path.write_text(json.dumps(tiny_corpus_data()), encoding="utf-8")
    return path
