#!/usr/bin/env python3
"""Build a keyword co-occurrence graph from a small dialogue corpus and query it.

Every utterance text and every retrieved knowledge passage is its own
"document". Two keywords get an edge when they appear in a document
together, counted once per document.
"""

import json
import tempfile
from pathlib import Path

from graphaug import CoGraph, CoGraphBuilder, extract_keywords, parse_corpus

corpus = parse_corpus({
    "dialogues": [
        {
            "id": "demo-1",
            "topic": "social media",
            "turns": [
                {"speaker": "apprentice",
                 "text": "I spend too much time on Facebook looking at pictures.",
                 "knowledge": []},
                {"speaker": "wizard",
                 "text": "Facebook is the biggest social media platform.",
                 "knowledge": ["Facebook is an American social media and social "
                               "networking service."]},
                {"speaker": "apprentice",
                 "text": "My cousin shares every picture there.", "knowledge": []},
            ],
        },
        {
            "id": "demo-2",
            "topic": "search engines",
            "turns": [
                {"speaker": "apprentice",
                 "text": "Google is how I retrieve everything.", "knowledge": []},
                {"speaker": "wizard",
                 "text": "Google also runs email and advertising.",
                 "knowledge": ["Google offers email, advertising and search services."]},
            ],
        },
    ]
})

# 1. Each document becomes a keyword set (stopwords dropped, lowercased).
documents = corpus.documents()
print(f"{len(documents)} documents derived from {len(corpus.dialogues)} dialogues")
for doc in documents[:3]:
    print(f"  {doc.doc_id}: {sorted(extract_keywords(doc).keywords)}")

# 2. Feed every document into the builder, then freeze the graph.
builder = CoGraphBuilder()
for doc in documents:
    builder.add_document(extract_keywords(doc))
graph = builder.finalize()
print(f"\ngraph: {len(graph.nodes)} nodes, {graph.edge_count} edges, "
      f"{graph.doc_count} documents")

# 3. The 1-hop query: neighbors ranked by softmax edge weight.
print("\ntop neighbors of 'facebook':")
for nw in graph.edge_weights("facebook")[:5]:
    print(f"  {nw.neighbor:<12} count={nw.count}  weight={nw.weight:.4f}")

print("\ntop-3 sequence for 'google':", graph.one_hop_sequence("google", 3))

# 4. Graphs round-trip through a deterministic JSON file.
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "graph.json"
    graph.save(path)
    reloaded = CoGraph.load(path)
    print(f"\nsaved {path.stat().st_size} bytes; reload identical: {reloaded == graph}")
    print("file preview:", json.dumps(json.loads(path.read_text())["nodes"][:6]))
