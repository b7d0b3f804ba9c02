"""Dialogue corpus ingestion and the document units used for graph building.

The canonical corpus file is UTF-8 JSON:

    {"dialogues": [{"id": str, "topic": str,
                    "turns": [{"speaker": "wizard"|"apprentice",
                               "text": str,
                               "knowledge": [str, ...]}]}]}

Mapping from the public Wizard-of-Wikipedia release: ``chosen_topic`` ->
``topic``, each ``dialog`` entry's ``text`` -> ``text``, and the entry's
``retrieved_passages`` sentences -> ``knowledge``. Converting the release
into this schema is a separate script's job, not this module's.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable


class CorpusError(Exception):
    """Corpus file is malformed or violates the schema."""


class Speaker(Enum):
    WIZARD = "wizard"
    APPRENTICE = "apprentice"


class DocumentOrigin(Enum):
    UTTERANCE_TEXT = "utterance_text"
    KNOWLEDGE_PASSAGE = "knowledge_passage"


@dataclass(frozen=True)
class Utterance:
    speaker: Speaker
    text: str
    knowledge: tuple[str, ...] = ()


@dataclass(frozen=True)
class Dialogue:
    id: str
    topic: str
    turns: tuple[Utterance, ...]


@dataclass(frozen=True)
class Document:
    """One graph-building unit: an utterance text or a knowledge passage."""

    doc_id: str
    text: str
    origin: DocumentOrigin


@dataclass(frozen=True)
class Corpus:
    dialogues: tuple[Dialogue, ...]

    def documents(self, knowledge: str = "all") -> list[Document]:
        """Enumerate documents in stable order.

        Order is dialogue order, then turn order, with each turn's text
        before its knowledge passages. ``knowledge`` is ``"all"`` (default)
        or ``"wizard-only"``, which keeps knowledge passages only for
        wizard turns; utterance texts are always included.
        """
        if knowledge not in ("all", "wizard-only"):
            raise ValueError(f"unknown knowledge filter: {knowledge!r}")
        docs = []
        for dialogue in self.dialogues:
            for i, turn in enumerate(dialogue.turns):
                docs.append(Document(
                    doc_id=f"{dialogue.id}/turn{i}",
                    text=turn.text,
                    origin=DocumentOrigin.UTTERANCE_TEXT,
                ))
                if knowledge == "wizard-only" and turn.speaker is not Speaker.WIZARD:
                    continue
                for j, passage in enumerate(turn.knowledge):
                    docs.append(Document(
                        doc_id=f"{dialogue.id}/turn{i}/k{j}",
                        text=passage,
                        origin=DocumentOrigin.KNOWLEDGE_PASSAGE,
                    ))
        return docs


def _require(condition: bool, where: str, problem: str) -> None:
    if not condition:
        raise CorpusError(f"{where}: {problem}")


def _parse_utterance(raw: object, where: str) -> Utterance:
    _require(isinstance(raw, dict), where, "turn is not an object")
    speaker_raw = raw.get("speaker")
    try:
        speaker = Speaker(speaker_raw)
    except ValueError:
        raise CorpusError(
            f"{where}: speaker must be 'wizard' or 'apprentice', got {speaker_raw!r}"
        ) from None
    text = raw.get("text")
    _require(isinstance(text, str), where, "text must be a string")
    _require(bool(text.strip()), where, "text is empty")
    knowledge_raw = raw.get("knowledge", [])
    _require(isinstance(knowledge_raw, list), where, "knowledge must be a list")
    for j, passage in enumerate(knowledge_raw):
        _require(isinstance(passage, str) and bool(passage.strip()),
                 where, f"knowledge[{j}] is empty or not a string")
    return Utterance(speaker=speaker, text=text, knowledge=tuple(knowledge_raw))


def _parse_dialogue(raw: object, position: int) -> Dialogue:
    _require(isinstance(raw, dict), f"dialogues[{position}]", "dialogue is not an object")
    dialogue_id = raw.get("id")
    _require(isinstance(dialogue_id, str) and dialogue_id != "",
             f"dialogues[{position}]", "missing or empty id")
    where = f"dialogue {dialogue_id!r}"
    topic = raw.get("topic")
    _require(isinstance(topic, str), where, "topic must be a string")
    turns_raw = raw.get("turns")
    _require(isinstance(turns_raw, list), where, "turns must be a list")
    _require(len(turns_raw) >= 2, where, f"needs at least 2 turns, has {len(turns_raw)}")
    turns = tuple(
        _parse_utterance(turn, f"{where}, turn {i}") for i, turn in enumerate(turns_raw)
    )
    return Dialogue(id=dialogue_id, topic=topic, turns=turns)


def parse_corpus(data: object) -> Corpus:
    """Validate already-decoded corpus JSON."""
    _require(isinstance(data, dict), "corpus", "top level must be an object")
    dialogues_raw = data.get("dialogues")
    _require(isinstance(dialogues_raw, list), "corpus", "missing 'dialogues' list")
    dialogues = tuple(_parse_dialogue(d, i) for i, d in enumerate(dialogues_raw))
    seen: set[str] = set()
    for dialogue in dialogues:
        _require(dialogue.id not in seen, f"dialogue {dialogue.id!r}", "duplicate id")
        seen.add(dialogue.id)
    return Corpus(dialogues=dialogues)


def load_corpus(path) -> Corpus:
    """Load and validate the canonical corpus JSON file."""
    with open(path, encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"{path}: invalid JSON: {exc}") from exc
    return parse_corpus(data)


def split_seen_unseen(corpus: Corpus, train_topics: Iterable[str]) -> tuple[Corpus, Corpus]:
    """Partition dialogues by whether their topic appears in ``train_topics``."""
    topics = set(train_topics)
    seen = tuple(d for d in corpus.dialogues if d.topic in topics)
    unseen = tuple(d for d in corpus.dialogues if d.topic not in topics)
    return Corpus(dialogues=seen), Corpus(dialogues=unseen)
