#!/usr/bin/env python3
"""Generate the three training-instance streams and emit them as JSONL.

Three tasks share one sequence-to-sequence format:

  dialogue  src = turn history,            tgt = the reply
  graph     src = "[GRAPH] " + history,    tgt = entity's top-k neighbor words
  ner       src = "[NER] " + one turn,     tgt = turn with entities replaced
                                                 by their tags ("[PER]", ...)
"""

import tempfile
from pathlib import Path

from graphaug import (
    AugmentConfig,
    CoGraphBuilder,
    HeuristicTagger,
    NerTag,
    augment_corpus,
    emit_jsonl,
    extract_keywords,
    parse_corpus,
)

corpus = parse_corpus({
    "dialogues": [
        {
            "id": "demo-1",
            "topic": "books",
            "turns": [
                {"speaker": "apprentice",
                 "text": "I adore Tolkien and epic fantasy novels.",
                 "knowledge": ["Tolkien wrote famous fantasy novels."]},
                {"speaker": "wizard",
                 "text": "Have you read other fantasy authors?", "knowledge": []},
                {"speaker": "apprentice",
                 "text": "Mostly Tolkien, but I want recommendations.",
                 "knowledge": []},
            ],
        },
    ]
})

# Graph built from the same corpus; "tolkien" picks up neighbors from the
# utterances and the knowledge passage.
builder = CoGraphBuilder()
for doc in corpus.documents():
    builder.add_document(extract_keywords(doc))
graph = builder.finalize()

# The gazetteer gives "Tolkien" a PER tag instead of the MISC fallback.
tagger = HeuristicTagger({NerTag.PER: ["Tolkien"]})

cfg = AugmentConfig(k=4)
instances = augment_corpus(corpus, cfg, graph=graph, tagger=tagger,
                           gazetteer=tagger.entries)

for inst in instances:
    print(f"[{inst.task.value:>8}] turn={inst.turn_index} entity={inst.entity}")
    print(f"    src: {inst.src}")
    print(f"    tgt: {inst.tgt}")

# Emission sorts into the canonical order and is byte-deterministic.
with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "train.jsonl"
    emit_jsonl(instances, out)
    print(f"\nwrote {len(instances)} instances to JSONL, first line:")
    print(out.read_text().splitlines()[0])
