#!/usr/bin/env python3
"""Walk through the evaluation metrics: perplexity, unigram F1, ROUGE-N."""

import math

from graphaug import LogProbRecord, corpus_perplexity, perplexity, rouge_n, unigram_f1

# --- Perplexity -----------------------------------------------------------
# PPL is exp of the negative mean token log-probability. A model that puts
# probability 1 on every target token scores exactly 1.
certain = LogProbRecord(id="certain", logprobs=(0.0, 0.0, 0.0))
print("PPL, probability-1 model:   ", perplexity(certain))

# Five tokens each with probability 1/100 -> PPL 100.
uniform = LogProbRecord(id="uniform", logprobs=tuple([-math.log(100)] * 5))
print("PPL, uniform 1/100 tokens:  ", round(perplexity(uniform), 6))

# Corpus PPL pools tokens: one bad 1-token item does not count as much as a
# good 3-token item (this is not a mean of per-item PPLs).
records = [
    LogProbRecord(id="short-bad", logprobs=(-4.0,)),
    LogProbRecord(id="long-good", logprobs=(0.0, 0.0, 0.0)),
]
print("corpus PPL (pooled tokens): ", round(corpus_perplexity(records), 6),
      "= exp(4/4)")

# --- Unigram F1 -----------------------------------------------------------
# Clipped multiset overlap after lowercasing; harmonic mean of P and R.
print("\nF1 identical:               ", unigram_f1("the cat sat", "the cat sat"))
print("F1 'a b c' vs 'a b d':      ", round(unigram_f1("a b c", "a b d"), 4))
print("F1 disjoint:                ", unigram_f1("aa bb", "cc dd"))

# --- ROUGE-N ---------------------------------------------------------------
# Recall-flavored: clipped n-gram matches over total reference n-grams,
# summed across references.
print("\nROUGE-1 full recall:        ", rouge_n("the cat sat", ["the cat"], 1))
print("ROUGE-2 partial:            ",
      round(rouge_n("the cat sat here", ["the cat sat quietly"], 2), 4))
print("ROUGE-1 two references:     ",
      round(rouge_n("a b c", ["a b", "b c c"], 1), 4))
