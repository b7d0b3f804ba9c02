"""Keyword co-occurrence graph: construction, persistence, weighted queries.

Counting is document-level set semantics: a keyword pair is incremented
once per document containing both words, regardless of token frequency.
Edge weights are a softmax over a node's neighbor counts, so weight order
always equals raw count order; ties break lexicographically.

Graph file format (UTF-8 JSON, byte-deterministic for a given graph):

    {"version": 1, "doc_count": N,
     "nodes": [sorted strings],
     "edges": [[i, j, count], ...]}   # i < j, sorted by (i, j)
"""

from __future__ import annotations

import json
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .textproc import KeywordSet

GRAPH_FILE_VERSION = 1


class GraphFinalizedError(Exception):
    """Mutation attempted after finalize()."""


class NodeUnknownError(Exception):
    """Queried node is not in the graph (distinct from an empty neighborhood)."""

    def __init__(self, node: str):
        super().__init__(f"node unknown: {node!r}")
        self.node = node


class GraphFileError(Exception):
    """Graph file is corrupt or violates the persisted schema."""


class NeighborWeight(NamedTuple):
    neighbor: str
    count: int
    weight: float


class CoGraphBuilder:
    """Accumulates co-occurrence counts; finalize() yields an immutable CoGraph."""

    def __init__(self):
        self._pair_counts: Counter[tuple[str, str]] = Counter()
        self._nodes: set[str] = set()
        self._doc_count = 0
        self._finalized = False

    @property
    def doc_count(self) -> int:
        return self._doc_count

    def add_document(self, kw: KeywordSet) -> None:
        """Count every unordered keyword pair once and register all keywords."""
        if self._finalized:
            raise GraphFinalizedError("add_document() called after finalize()")
        words = sorted(kw.keywords)
        self._nodes.update(words)
        self._pair_counts.update(combinations(words, 2))
        self._doc_count += 1

    def merge(self, other: "CoGraphBuilder") -> None:
        """Fold another builder's counts in; used for parallel builds."""
        if self._finalized:
            raise GraphFinalizedError("merge() called after finalize()")
        self._nodes.update(other._nodes)
        self._pair_counts.update(other._pair_counts)
        self._doc_count += other._doc_count

    def finalize(self, min_count: int = 1) -> "CoGraph":
        """Freeze into a queryable graph, dropping edges below ``min_count``."""
        if min_count < 1:
            raise ValueError(f"min_count must be >= 1, got {min_count}")
        self._finalized = True
        adjacency: dict[str, dict[str, int]] = {node: {} for node in self._nodes}
        for (v, u), count in self._pair_counts.items():
            if count < min_count:
                continue
            adjacency[v][u] = count
            adjacency[u][v] = count
        return CoGraph(adjacency, self._doc_count)


class CoGraph:
    """Finalized, immutable co-occurrence graph."""

    def __init__(self, adjacency: dict[str, dict[str, int]], doc_count: int):
        self._adjacency = adjacency
        self._nodes = tuple(sorted(adjacency))
        self._doc_count = doc_count

    @property
    def nodes(self) -> tuple[str, ...]:
        """All nodes, sorted lexicographically."""
        return self._nodes

    @property
    def doc_count(self) -> int:
        return self._doc_count

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self._adjacency.values()) // 2

    def __contains__(self, node: str) -> bool:
        return node in self._adjacency

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoGraph):
            return NotImplemented
        return (self._adjacency == other._adjacency
                and self._doc_count == other._doc_count)

    def count(self, v: str, u: str) -> int:
        """Co-occurrence count for an edge, 0 if absent."""
        self._require_node(v)
        return self._adjacency[v].get(u, 0)

    def degree(self, v: str) -> int:
        self._require_node(v)
        return len(self._adjacency[v])

    def neighbors(self, v: str) -> set[str]:
        self._require_node(v)
        return set(self._adjacency[v])

    def edge_weights(self, v: str) -> list[NeighborWeight]:
        """Softmax of co-occurrence counts over the full neighborhood of ``v``.

        Sorted by descending weight, ties broken lexicographically. The max
        count is subtracted before exponentiation so large counts stay finite.
        """
        self._require_node(v)
        # count order == weight order (softmax is monotone), so this sort
        # also realizes the weight-descending contract.
        items = sorted(self._adjacency[v].items(), key=lambda kv: (-kv[1], kv[0]))
        if not items:
            return []
        max_count = items[0][1]
        exps = [math.exp(count - max_count) for _, count in items]
        total = sum(exps)
        return [NeighborWeight(neighbor, count, e / total)
                for (neighbor, count), e in zip(items, exps)]

    def one_hop_sequence(self, v: str, k: int) -> list[str]:
        """Top-``k`` neighbors of ``v`` in edge-weight order."""
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        return [nw.neighbor for nw in self.edge_weights(v)[:k]]

    def _require_node(self, v: str) -> None:
        if v not in self._adjacency:
            raise NodeUnknownError(v)

    def save(self, path) -> None:
        """Write the deterministic JSON graph file."""
        index = {node: i for i, node in enumerate(self._nodes)}
        edges = []
        for v, nbrs in self._adjacency.items():
            for u, count in nbrs.items():
                i, j = index[v], index[u]
                if i < j:
                    edges.append([i, j, count])
        edges.sort()
        payload = {
            "version": GRAPH_FILE_VERSION,
            "doc_count": self._doc_count,
            "nodes": list(self._nodes),
            "edges": edges,
        }
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            json.dump(payload, f, ensure_ascii=False, separators=(",", ":"))
            f.write("\n")

    @classmethod
    def load(cls, path) -> "CoGraph":
        with open(path, encoding="utf-8") as f:
            try:
                payload = json.load(f)
            except json.JSONDecodeError as exc:
                raise GraphFileError(f"{path}: not valid JSON: {exc}") from exc
        return cls._from_payload(payload, str(path))

    @classmethod
    def _from_payload(cls, payload: object, where: str) -> "CoGraph":
        def corrupt(problem: str):
            return GraphFileError(f"{where}: {problem}")

        if not isinstance(payload, dict):
            raise corrupt("top level must be an object")
        if payload.get("version") != GRAPH_FILE_VERSION:
            raise corrupt(f"unsupported version {payload.get('version')!r}")
        doc_count = payload.get("doc_count")
        if not isinstance(doc_count, int) or doc_count < 0:
            raise corrupt("doc_count must be a non-negative integer")
        nodes = payload.get("nodes")
        if (not isinstance(nodes, list)
                or any(not isinstance(n, str) for n in nodes)
                or sorted(set(nodes)) != nodes):
            raise corrupt("nodes must be a sorted list of unique strings")
        edges = payload.get("edges")
        if not isinstance(edges, list):
            raise corrupt("edges must be a list")
        adjacency: dict[str, dict[str, int]] = {node: {} for node in nodes}
        previous = None
        for entry in edges:
            if (not isinstance(entry, list) or len(entry) != 3
                    or any(not isinstance(x, int) for x in entry)):
                raise corrupt(f"bad edge entry {entry!r}")
            i, j, count = entry
            if not (0 <= i < j < len(nodes)):
                raise corrupt(f"edge indices out of range: {entry!r}")
            if count < 1 or count > doc_count:
                raise corrupt(f"edge count out of range: {entry!r}")
            if previous is not None and (i, j) <= previous:
                raise corrupt(f"edges not sorted by (i, j) at {entry!r}")
            previous = (i, j)
            adjacency[nodes[i]][nodes[j]] = count
            adjacency[nodes[j]][nodes[i]] = count
        return cls(adjacency, doc_count)


def build_graph(
    keyword_sets: Sequence[KeywordSet] | Iterable[KeywordSet],
    min_count: int = 1,
    threads: int = 1,
) -> CoGraph:
    """Build a finalized graph from keyword sets, optionally in parallel.

    With ``threads > 1`` the documents are partitioned into chunks counted
    independently and merged by summation, so the result is identical to a
    sequential build.
    """
    keyword_sets = list(keyword_sets)
    builder = CoGraphBuilder()
    if threads <= 1 or len(keyword_sets) < 2:
        for kw in keyword_sets:
            builder.add_document(kw)
        return builder.finalize(min_count)

    chunk_size = (len(keyword_sets) + threads - 1) // threads
    chunks = [keyword_sets[i:i + chunk_size]
              for i in range(0, len(keyword_sets), chunk_size)]

    def count_chunk(chunk: list[KeywordSet]) -> CoGraphBuilder:
        partial = CoGraphBuilder()
        for kw in chunk:
            partial.add_document(kw)
        return partial

    with ThreadPoolExecutor(max_workers=threads) as pool:
        for partial in pool.map(count_chunk, chunks):
            builder.merge(partial)
    return builder.finalize(min_count)
