"""Evaluation metrics: perplexity from token log-probs, unigram F1, ROUGE-N.

All functions are pure. Log-probabilities are natural-log. Corpus
perplexity pools tokens across items (exp of the negative mean over all
tokens), which is not the mean of per-item perplexities.
"""

from __future__ import annotations

import json
import math
import string
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class LogProbRecord:
    id: str
    logprobs: tuple[float, ...]

    def __post_init__(self):
        if len(self.logprobs) == 0:
            raise ValueError(f"record {self.id!r}: logprobs is empty")
        for lp in self.logprobs:
            if not math.isfinite(lp):
                raise ValueError(f"record {self.id!r}: non-finite logprob {lp!r}")
            if lp > 0:
                raise ValueError(f"record {self.id!r}: positive logprob {lp!r}")


@dataclass(frozen=True)
class MetricReport:
    metric: str
    corpus_value: float
    per_item: tuple[tuple[str, float], ...]

    def to_dict(self) -> dict:
        return {
            "metric": self.metric,
            "corpus_value": self.corpus_value,
            "per_item": [[item_id, value] for item_id, value in self.per_item],
        }


def perplexity(record: LogProbRecord) -> float:
    """exp of the negative mean log-probability of one sequence."""
    return float(np.exp(-np.mean(record.logprobs)))


def corpus_perplexity(records: Sequence[LogProbRecord]) -> float:
    """Pooled perplexity: all tokens weighted equally across records."""
    if not records:
        raise ValueError("no records")
    total = sum(sum(r.logprobs) for r in records)
    count = sum(len(r.logprobs) for r in records)
    return float(np.exp(-total / count))


def read_logprobs(path) -> list[LogProbRecord]:
    """Read LogProbRecord JSONL: {"id": str, "logprobs": [floats]} per line."""
    records = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
                records.append(LogProbRecord(
                    id=str(raw["id"]),
                    logprobs=tuple(float(lp) for lp in raw["logprobs"]),
                ))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"{path}:{lineno}: bad logprob record: {exc}") from exc
    return records


def _metric_tokens(text: str, lowercase: bool, strip_punctuation: bool) -> list[str]:
    if lowercase:
        text = text.lower()
    tokens = text.split()
    if strip_punctuation:
        tokens = [t.strip(string.punctuation) for t in tokens]
        tokens = [t for t in tokens if t]
    return tokens


def unigram_f1(hyp: str, ref: str, lowercase: bool = True,
               strip_punctuation: bool = False) -> float:
    """Harmonic mean of clipped-unigram precision and recall.

    Both empty -> 1.0; exactly one empty -> 0.0; no overlap -> 0.0.
    """
    hyp_tokens = _metric_tokens(hyp, lowercase, strip_punctuation)
    ref_tokens = _metric_tokens(ref, lowercase, strip_punctuation)
    if not hyp_tokens and not ref_tokens:
        return 1.0
    if not hyp_tokens or not ref_tokens:
        return 0.0
    hyp_counts = Counter(hyp_tokens)
    ref_counts = Counter(ref_tokens)
    overlap = sum(min(count, ref_counts[tok]) for tok, count in hyp_counts.items())
    if overlap == 0:
        return 0.0
    precision = overlap / len(hyp_tokens)
    recall = overlap / len(ref_tokens)
    return 2 * precision * recall / (precision + recall)


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(hyp: str, refs: Iterable[str], n: int, lowercase: bool = True,
            strip_punctuation: bool = False) -> float:
    """Clipped n-gram matches over total reference n-grams, summed over refs.

    References shorter than ``n`` contribute zero grams; if all are shorter
    the denominator is undefined and a ValueError is raised.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    refs = list(refs)
    if not refs:
        raise ValueError("refs must be non-empty")
    hyp_grams = _ngrams(_metric_tokens(hyp, lowercase, strip_punctuation), n)
    matched = 0
    total = 0
    for ref in refs:
        ref_grams = _ngrams(_metric_tokens(ref, lowercase, strip_punctuation), n)
        matched += sum(min(count, hyp_grams[gram]) for gram, count in ref_grams.items())
        total += sum(ref_grams.values())
    if total == 0:
        raise ValueError(f"undefined denominator: every reference has fewer than {n} tokens")
    return matched / total


def ppl_report(records: Sequence[LogProbRecord]) -> MetricReport:
    per_item = tuple((r.id, perplexity(r)) for r in records)
    return MetricReport("ppl", corpus_perplexity(records), per_item)


def f1_report(pairs: Sequence[tuple[str, str, str]], lowercase: bool = True,
              strip_punctuation: bool = False) -> MetricReport:
    """Mean unigram F1 over (id, hyp, ref) pairs."""
    per_item = tuple(
        (item_id, unigram_f1(hyp, ref, lowercase, strip_punctuation))
        for item_id, hyp, ref in pairs
    )
    corpus = float(np.mean([v for _, v in per_item])) if per_item else 0.0
    return MetricReport("f1", corpus, per_item)


def rouge_report(pairs: Sequence[tuple[str, str, str]], n: int,
                 lowercase: bool = True, strip_punctuation: bool = False) -> MetricReport:
    """Mean ROUGE-N over (id, hyp, ref) pairs, each ref its own singleton set."""
    per_item = tuple(
        (item_id, rouge_n(hyp, [ref], n, lowercase, strip_punctuation))
        for item_id, hyp, ref in pairs
    )
    corpus = float(np.mean([v for _, v in per_item])) if per_item else 0.0
    return MetricReport(f"rouge-{n}", corpus, per_item)
