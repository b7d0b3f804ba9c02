"""Tokenization, keyword extraction, and pluggable named-entity tagging.

Everything here is pure and deterministic given immutable tagger state, so
per-document parallelism is safe.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .corpus import Document
from .stopwords import STOPWORDS


class AlignmentError(Exception):
    """External tags do not line up with the tokenized sentence."""


@dataclass(frozen=True)
class Token:
    surface: str
    norm: str
    index: int


@dataclass(frozen=True)
class KeywordSet:
    doc_id: str
    keywords: frozenset[str]


class NerTag(Enum):
    PER = "PER"
    LOC = "LOC"
    ORG = "ORG"
    MISC = "MISC"
    O = "O"


@dataclass(frozen=True)
class TaggedSentence:
    tokens: tuple[Token, ...]
    tags: tuple[NerTag, ...]

    def __post_init__(self):
        if len(self.tokens) != len(self.tags):
            raise AlignmentError(
                f"{len(self.tokens)} tokens but {len(self.tags)} tags"
            )


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch)[0] in ("P", "S")


def _peel(chunk: str) -> list[str]:
    """Split leading/trailing punctuation characters off a whitespace chunk."""
    i, j = 0, len(chunk)
    while i < j and _is_punct(chunk[i]):
        i += 1
    while j > i and _is_punct(chunk[j - 1]):
        j -= 1
    pieces = list(chunk[:i])
    if i < j:
        pieces.append(chunk[i:j])
    pieces.extend(chunk[j:])
    return pieces


def tokenize(text: str) -> list[Token]:
    """Whitespace-split, then peel leading/trailing punctuation into tokens.

    Internal punctuation ("COVID-19", "don't") is preserved. Empty text
    yields an empty list.
    """
    tokens: list[Token] = []
    for chunk in text.split():
        for surface in _peel(chunk):
            tokens.append(Token(surface=surface, norm=surface.lower(), index=len(tokens)))
    return tokens


def _alpha_or_hyphenated(word: str) -> bool:
    return all(part.isalpha() for part in word.split("-"))


def extract_keywords(doc: Document) -> KeywordSet:
    """Reduce a document to its content words.

    Keeps lowercased alphabetic-or-hyphenated tokens of length >= 2 that are
    not stopwords; the result is deduplicated.
    """
    keywords = set()
    for token in tokenize(doc.text):
        word = token.norm
        if len(word) < 2 or word in STOPWORDS:
            continue
        if not _alpha_or_hyphenated(word):
            continue
        keywords.add(word)
    return KeywordSet(doc_id=doc.doc_id, keywords=frozenset(keywords))


def _is_capitalized(token: Token) -> bool:
    first = token.surface[0]
    return first.isalpha() and first.isupper()


def _is_all_caps(token: Token) -> bool:
    # Single letters ("I") don't qualify; this is for acronyms like "NASA".
    return len(token.surface) >= 2 and token.surface.isupper()


def detect_proper_nouns(
    sentence: Sequence[Token],
    at_sentence_start: bool = True,
    gazetteer: Iterable[str] = (),
) -> list[tuple[int, int]]:
    """Find maximal runs of capitalized tokens as (start, end) inclusive spans.

    A capitalized token at position 0 of a sentence is ambiguous (ordinary
    sentence-case), so when ``at_sentence_start`` it only counts if it is
    all-caps or appears in the gazetteer. Gazetteer entries may be
    multi-word; membership is checked per word, case-insensitively.
    """
    gazetteer_words = {word for entry in gazetteer for word in entry.lower().split()}
    spans: list[tuple[int, int]] = []
    start = None
    for i, token in enumerate(sentence):
        proper = _is_capitalized(token)
        if proper and i == 0 and at_sentence_start:
            proper = _is_all_caps(token) or token.norm in gazetteer_words
        if proper:
            if start is None:
                start = i
        elif start is not None:
            spans.append((start, i - 1))
            start = None
    if start is not None:
        spans.append((start, len(sentence) - 1))
    return spans


_GAZETTEER_FILES = {NerTag.PER: "per.txt", NerTag.LOC: "loc.txt", NerTag.ORG: "org.txt"}
# Lookup precedence when a phrase appears in several gazetteers.
_GAZETTEER_ORDER = (NerTag.PER, NerTag.LOC, NerTag.ORG)


class HeuristicTagger:
    """Capitalization + gazetteer tagger.

    Detected proper-noun spans get the type of the gazetteer listing their
    full phrase; capitalized-but-unlisted spans fall back to MISC.
    """

    def __init__(self, gazetteers: dict[NerTag, Iterable[str]] | None = None):
        self._phrases: dict[NerTag, frozenset[str]] = {}
        for tag in _GAZETTEER_ORDER:
            entries = (gazetteers or {}).get(tag, ())
            self._phrases[tag] = frozenset(e.lower().strip() for e in entries if e.strip())
        self._all_entries = frozenset().union(*self._phrases.values())

    @classmethod
    def from_dir(cls, path) -> "HeuristicTagger":
        """Read per.txt / loc.txt / org.txt (one entry per line, UTF-8)."""
        root = Path(path)
        gazetteers = {}
        for tag, name in _GAZETTEER_FILES.items():
            file = root / name
            if file.exists():
                lines = file.read_text(encoding="utf-8").splitlines()
                gazetteers[tag] = [line.strip() for line in lines if line.strip()]
        return cls(gazetteers)

    @property
    def entries(self) -> frozenset[str]:
        """All gazetteer phrases, lowercased; useful for span detection."""
        return self._all_entries

    def tag(self, sentence: Sequence[Token], at_sentence_start: bool = True) -> list[NerTag]:
        tags = [NerTag.O] * len(sentence)
        spans = detect_proper_nouns(sentence, at_sentence_start, self._all_entries)
        for start, end in spans:
            phrase = " ".join(tok.norm for tok in sentence[start:end + 1])
            span_tag = NerTag.MISC
            for tag in _GAZETTEER_ORDER:
                if phrase in self._phrases[tag]:
                    span_tag = tag
                    break
            for i in range(start, end + 1):
                tags[i] = span_tag
        return tags


def _parse_conll_tag(raw: str, where: str) -> NerTag:
    value = raw.strip()
    if value.startswith(("B-", "I-")):
        value = value[2:]
    try:
        return NerTag(value)
    except ValueError:
        raise AlignmentError(f"{where}: unknown tag {raw!r}") from None


class ExternalTagger:
    """Pre-computed tags from a CoNLL-style file.

    Format: one "token<TAB>tag" line per token, blank line between
    sentences. Sentences are consumed in order; each call to :meth:`tag`
    must match the next file sentence token-for-token.
    """

    def __init__(self, path):
        self._path = str(path)
        self._sentences: list[list[tuple[str, NerTag]]] = []
        current: list[tuple[str, NerTag]] = []
        with open(path, encoding="utf-8") as f:
            for lineno, line in enumerate(f, start=1):
                line = line.rstrip("\n")
                if not line.strip():
                    if current:
                        self._sentences.append(current)
                        current = []
                    continue
                if "\t" not in line:
                    raise AlignmentError(
                        f"{self._path}:{lineno}: expected 'token<TAB>tag', got {line!r}"
                    )
                surface, tag_raw = line.split("\t", 1)
                current.append((surface, _parse_conll_tag(tag_raw, f"{self._path}:{lineno}")))
        if current:
            self._sentences.append(current)
        self._cursor = 0

    def tag(self, sentence: Sequence[Token], at_sentence_start: bool = True) -> list[NerTag]:
        if self._cursor >= len(self._sentences):
            raise AlignmentError(
                f"{self._path}: ran out of tagged sentences at sentence {self._cursor}"
            )
        expected = self._sentences[self._cursor]
        self._cursor += 1
        surfaces = [tok.surface for tok in sentence]
        if len(expected) != len(surfaces):
            raise AlignmentError(
                f"{self._path}: sentence {self._cursor - 1}: file has {len(expected)} "
                f"tokens, sentence {surfaces!r} has {len(surfaces)}"
            )
        for i, ((file_surface, _), surface) in enumerate(zip(expected, surfaces)):
            if file_surface != surface:
                raise AlignmentError(
                    f"{self._path}: sentence {self._cursor - 1}, token {i}: "
                    f"file says {file_surface!r}, sentence says {surface!r}"
                )
        return [tag for _, tag in expected]


def ner_tag(sentence: Sequence[Token], tagger, at_sentence_start: bool = True) -> TaggedSentence:
    """Tag a tokenized sentence with the given tagger (heuristic or external)."""
    tags = tagger.tag(sentence, at_sentence_start=at_sentence_start)
    return TaggedSentence(tokens=tuple(sentence), tags=tuple(tags))
