"""Acceptance suite: one test per release criterion, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the criterion lines.
"""

import functools
import itertools
import json
import math
import random
import time

import mpmath

from graphaug.augment import (
    GRAPH_MARKER,
    NER_MARKER,
    AugmentConfig,
    Task,
    augment_corpus,
)
from graphaug.cli import main
from graphaug.cograph import CoGraph, CoGraphBuilder
from graphaug.corpus import parse_corpus
from graphaug.metrics import LogProbRecord, perplexity, rouge_n, unigram_f1
from graphaug.textproc import HeuristicTagger, KeywordSet, NerTag, ner_tag, tokenize

from conftest import make_synthetic_corpus_data


def criterion(name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"\nACCEPTANCE {name}: FAIL")
                raise
            print(f"\nACCEPTANCE {name}: PASS")
        return wrapper
    return decorate


def build_from_docs(docs, min_count=1):
    builder = CoGraphBuilder()
    for i, words in enumerate(docs):
        builder.add_document(KeywordSet(doc_id=str(i), keywords=frozenset(words)))
    return builder.finalize(min_count=min_count)


def random_corpus(rng):
    vocab = [f"w{i:02d}" for i in range(rng.randint(1, 20))]
    docs = [set(rng.sample(vocab, rng.randint(0, min(len(vocab), 8))))
            for _ in range(rng.randint(0, 50))]
    return vocab, docs


@criterion("graph-oracle-equivalence")
def test_graph_oracle_equivalence():
    rng = random.Random(20260801)
    started = time.perf_counter()
    for _ in range(200):
        vocab, docs = random_corpus(rng)
        graph = build_from_docs(docs)
        assert graph.doc_count == len(docs)
        assert set(graph.nodes) == set().union(set(), *docs)
        for v, u in itertools.combinations(vocab, 2):
            brute = sum(1 for d in docs if v in d and u in d)
            actual = graph.count(v, u) if v in graph and u in graph else 0
            assert actual == brute, (v, u)
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0, f"oracle sweep took {elapsed:.2f}s"


@criterion("softmax-contract")
def test_softmax_contract():
    rng = random.Random(20260802)
    for _ in range(200):
        _, docs = random_corpus(rng)
        graph = build_from_docs(docs)
        for v in graph.nodes:
            weights = graph.edge_weights(v)
            if not weights:
                continue
            assert abs(sum(w.weight for w in weights) - 1.0) <= 1e-9
            for k in (1, 3, len(weights)):
                by_weight = [w.neighbor for w in weights[:k]]
                by_count = [u for _, u in sorted(
                    ((-w.count, w.neighbor) for w in weights))][:k]
                assert by_weight == by_count
    # Counts far beyond anything exp() could take raw stay finite.
    adjacency = {"hub": {"a": 10**6, "b": 10**6 - 2, "c": 1},
                 "a": {"hub": 10**6}, "b": {"hub": 10**6 - 2}, "c": {"hub": 1}}
    giant = CoGraph(adjacency, doc_count=10**6)
    weights = giant.edge_weights("hub")
    assert all(math.isfinite(w.weight) for w in weights)
    assert abs(sum(w.weight for w in weights) - 1.0) <= 1e-9


@criterion("worked-weight-case")
def test_worked_weight_case():
    graph = build_from_docs([{"v", "b"}, {"v", "b"}, {"v", "c"}])
    weights = {w.neighbor: w.weight for w in graph.edge_weights("v")}
    with mpmath.workdps(50):
        denom = mpmath.exp(2) + mpmath.exp(1)
        expected_b = float(mpmath.exp(2) / denom)
        expected_c = float(mpmath.exp(1) / denom)
    assert abs(weights["b"] - expected_b) < 1e-4
    assert abs(weights["c"] - expected_c) < 1e-4
    assert abs(weights["b"] - 0.7311) < 1e-4
    assert abs(weights["c"] - 0.2689) < 1e-4


@criterion("cli-determinism")
def test_cli_determinism(tmp_path):
    corpus_path = tmp_path / "corpus.json"
    corpus_path.write_text(json.dumps(make_synthetic_corpus_data()), encoding="utf-8")
    graphs, jsonls = [], []
    for run in (1, 2):
        graph_path = tmp_path / f"graph{run}.json"
        out_path = tmp_path / f"out{run}.jsonl"
        assert main(["build-graph", "--input", str(corpus_path),
                     "--output", str(graph_path)]) == 0
        assert main(["augment", "--input", str(corpus_path),
                     "--graph", str(graph_path), "--output", str(out_path)]) == 0
        graphs.append(graph_path.read_bytes())
        jsonls.append(out_path.read_bytes())
    assert graphs[0] == graphs[1]
    assert jsonls[0] == jsonls[1]


@criterion("save-load-round-trip")
def test_save_load_round_trip(tmp_path):
    rng = random.Random(20260803)
    for i in range(100):
        _, docs = random_corpus(rng)
        graph = build_from_docs(docs, min_count=rng.choice((1, 1, 2)))
        path = tmp_path / f"g{i}.json"
        graph.save(path)
        assert CoGraph.load(path) == graph


@criterion("augmentation-contracts")
def test_augmentation_contracts():
    corpus = parse_corpus(make_synthetic_corpus_data())
    docs = corpus.documents()
    from graphaug.textproc import extract_keywords
    graph = build_from_docs([extract_keywords(d).keywords for d in docs])
    tagger = HeuristicTagger()
    instances = augment_corpus(corpus, AugmentConfig(), graph=graph, tagger=tagger)

    nodes = set(graph.nodes)
    tag_tokens = {f"[{t.value}]" for t in NerTag if t is not NerTag.O}
    seen_tasks = set()
    for inst in instances:
        seen_tasks.add(inst.task)
        src_tokens = inst.src.split()
        assert len(src_tokens) <= 512
        if inst.task is Task.GRAPH:
            assert src_tokens[0] == GRAPH_MARKER
            assert src_tokens.count(GRAPH_MARKER) == 1
            assert all(tok in nodes for tok in inst.tgt.split())
        elif inst.task is Task.NER:
            assert src_tokens[0] == NER_MARKER
            assert src_tokens.count(NER_MARKER) == 1
            body = src_tokens[1:]
            tgt_tokens = inst.tgt.split()
            assert len(tgt_tokens) == len(body)
            # Re-derive the tags for the emitted window and check the
            # replacement position by position.
            retagged = ner_tag(tokenize(" ".join(body)), tagger)
            assert [t.surface for t in retagged.tokens] == body
            assert any(tag is not NerTag.O for tag in retagged.tags)
            for src_tok, tgt_tok, tag in zip(body, tgt_tokens, retagged.tags):
                if tag is NerTag.O:
                    assert tgt_tok == src_tok
                else:
                    assert tgt_tok == f"[{tag.value}]"
                    assert tgt_tok in tag_tokens
    assert seen_tasks == {Task.DIALOGUE, Task.GRAPH, Task.NER}


@criterion("metrics-worked-cases")
def test_metrics_worked_cases():
    assert abs(perplexity(LogProbRecord("a", (0.0, 0.0, 0.0))) - 1.0) < 1e-6
    uniform = tuple([-math.log(100.0)] * 5)
    assert abs(perplexity(LogProbRecord("b", uniform)) - 100.0) < 1e-6 * 100.0
    assert abs(perplexity(LogProbRecord("c", (-1.0, -2.0, -3.0))) - math.exp(2.0)) < 1e-6

    assert abs(unigram_f1("a b c", "a b d") - 2.0 / 3.0) < 1e-9

    assert abs(rouge_n("the cat sat", ["the cat sat"], 1) - 1.0) < 1e-9
    assert abs(rouge_n("the cat sat", ["the cat"], 1) - 1.0) < 1e-9
    assert rouge_n("x y", ["a b c"], 2) == 0.0

    rng = random.Random(20260804)
    vocab = ["a", "b", "c", "d", "e"]
    for _ in range(100):
        n = rng.randint(1, 3)
        refs = [" ".join(rng.choices(vocab, k=rng.randint(n, 8)))
                for _ in range(rng.randint(1, 3))]
        hyp = " ".join(rng.choices(vocab, k=rng.randint(0, 6)))
        extension = " ".join(rng.choices(vocab, k=rng.randint(1, 4)))
        extended = (hyp + " " + extension).strip()
        assert rouge_n(extended, refs, n) >= rouge_n(hyp, refs, n)


def figure_style_corpus_data():
    """Corpus forcing facebook's top co-occurrences to social > media > picture."""
    pair_docs = (
        [("facebook", "social")] * 5
        + [("facebook", "media")] * 4
        + [("facebook", "picture")] * 3
        + [("facebook", "email"), ("facebook", "game"), ("social", "media")]
    )
    dialogues = []
    for i in range(0, len(pair_docs), 2):
        turns = []
        for a, b in pair_docs[i:i + 2]:
            speaker = "apprentice" if len(turns) % 2 == 0 else "wizard"
            turns.append({"speaker": speaker, "text": f"{a} {b}", "knowledge": []})
        while len(turns) < 2:
            turns.append({"speaker": "wizard", "text": "filler filler", "knowledge": []})
        dialogues.append({"id": f"fig-{i}", "topic": "social media", "turns": turns})
    return {"dialogues": dialogues}


@criterion("figure-style-query")
def test_figure_style_query(tmp_path, capsys):
    corpus_path = tmp_path / "fig.json"
    corpus_path.write_text(json.dumps(figure_style_corpus_data()), encoding="utf-8")
    graph_path = tmp_path / "fig-graph.json"
    assert main(["build-graph", "--input", str(corpus_path),
                 "--output", str(graph_path)]) == 0
    capsys.readouterr()
    assert main(["query", "--graph", str(graph_path), "--node", "facebook",
                 "--k", "3"]) == 0
    rows = capsys.readouterr().out.strip().splitlines()
    assert [row.split("\t")[0] for row in rows] == ["social", "media", "picture"]
    counts = [int(row.split("\t")[1]) for row in rows]
    assert counts == [5, 4, 3]


@criterion("end-to-end-pipeline")
def test_end_to_end_pipeline(tmp_path, capsys):
    corpus_path = tmp_path / "corpus.json"
    corpus_path.write_text(json.dumps(make_synthetic_corpus_data()), encoding="utf-8")
    graph_path = tmp_path / "graph.json"
    out_path = tmp_path / "instances.jsonl"
    started = time.perf_counter()
    assert main(["build-graph", "--input", str(corpus_path),
                 "--output", str(graph_path)]) == 0
    assert main(["augment", "--input", str(corpus_path), "--graph", str(graph_path),
                 "--tasks", "dialogue,graph,ner", "--output", str(out_path)]) == 0
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0, f"pipeline took {elapsed:.2f}s"
    tasks = [json.loads(line)["task"] for line in out_path.read_text().splitlines()]
    for kind in ("dialogue", "graph", "ner"):
        assert tasks.count(kind) >= 1, f"no {kind} instances"
