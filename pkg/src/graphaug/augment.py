"""Training-instance generation: dialogue, graph, and NER task streams.

Source sequences are whitespace-token strings so downstream consumers can
recover token boundaries with a plain split. Task markers condition the
model on the source side and are never truncated away.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .cograph import CoGraph
from .corpus import Corpus, Dialogue
from .textproc import (
    AlignmentError,
    HeuristicTagger,
    NerTag,
    TaggedSentence,
    detect_proper_nouns,
    ner_tag,
    tokenize,
)

GRAPH_MARKER = "[GRAPH]"
NER_MARKER = "[NER]"


class Task(Enum):
    DIALOGUE = "dialogue"
    GRAPH = "graph"
    NER = "ner"


_TASK_ORDER = {Task.DIALOGUE: 0, Task.GRAPH: 1, Task.NER: 2}


def tag_token(tag: NerTag) -> str:
    """Bracketed rendering ("[PER]") so tags can't collide with real words."""
    return f"[{tag.value}]"


@dataclass(frozen=True)
class TrainingInstance:
    task: Task
    src: str
    tgt: str
    dialogue_id: str
    turn_index: int
    entity: str | None = None

    def to_record(self) -> dict:
        return {
            "task": self.task.value,
            "src": self.src,
            "tgt": self.tgt,
            "meta": {
                "dialogue_id": self.dialogue_id,
                "turn_index": self.turn_index,
                "entity": self.entity,
            },
        }


@dataclass(frozen=True)
class AugmentConfig:
    k: int = 10
    tasks: frozenset[Task] = frozenset(Task)
    turn_separator: str = "[SEP]"
    max_src_tokens: int = 512

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if not self.tasks:
            raise ValueError("tasks must be non-empty")
        if self.max_src_tokens < 2:
            raise ValueError("max_src_tokens must leave room for a marker")


def _context_tokens(dialogue: Dialogue, upto: int, separator: str) -> list[str]:
    """Whitespace tokens of turns[0:upto] joined by the separator token."""
    parts: list[str] = []
    for turn in dialogue.turns[:upto]:
        if parts:
            parts.append(separator)
        parts.extend(turn.text.split())
    return parts


def make_dialogue_instances(dialogue: Dialogue, cfg: AugmentConfig) -> list[TrainingInstance]:
    """One instance per reply turn: src = history, tgt = the reply.

    Histories longer than the token budget are left-truncated so the most
    recent turns survive.
    """
    instances = []
    for t in range(1, len(dialogue.turns)):
        tokens = _context_tokens(dialogue, t, cfg.turn_separator)
        tokens = tokens[-cfg.max_src_tokens:]
        instances.append(TrainingInstance(
            task=Task.DIALOGUE,
            src=" ".join(tokens),
            tgt=dialogue.turns[t].text,
            dialogue_id=dialogue.id,
            turn_index=t,
        ))
    return instances


def _context_entities(dialogue: Dialogue, upto: int,
                      gazetteer: Iterable[str]) -> list[str]:
    """Proper-noun span surfaces in turns[0:upto], in first-appearance order."""
    surfaces = []
    for turn in dialogue.turns[:upto]:
        tokens = tokenize(turn.text)
        for start, end in detect_proper_nouns(tokens, at_sentence_start=True,
                                              gazetteer=gazetteer):
            surfaces.append(" ".join(tok.surface for tok in tokens[start:end + 1]))
    return surfaces


def make_graph_instances(
    dialogue: Dialogue,
    graph: CoGraph,
    cfg: AugmentConfig,
    gazetteer: Iterable[str] = (),
) -> list[TrainingInstance]:
    """One instance per proper-noun occurrence whose lowercased surface is a
    graph node: src = marked context, tgt = the node's top-k neighbor sequence.

    Entities absent from the graph produce nothing here (the NER task covers
    them), and so do isolated nodes, whose neighbor sequence would be empty.
    """
    gazetteer = tuple(gazetteer)
    instances = []
    for t in range(1, len(dialogue.turns)):
        context = _context_tokens(dialogue, t, cfg.turn_separator)
        context = context[-(cfg.max_src_tokens - 1):]
        src = f"{GRAPH_MARKER} " + " ".join(context)
        for surface in _context_entities(dialogue, t, gazetteer):
            node = surface.lower()
            if node not in graph:
                continue
            sequence = graph.one_hop_sequence(node, cfg.k)
            if not sequence:
                continue
            instances.append(TrainingInstance(
                task=Task.GRAPH,
                src=src,
                tgt=" ".join(sequence),
                dialogue_id=dialogue.id,
                turn_index=t,
                entity=surface,
            ))
    return instances


def make_ner_instances(
    dialogue: Dialogue,
    tagged_turns: Sequence[TaggedSentence],
    cfg: AugmentConfig,
) -> list[TrainingInstance]:
    """One instance per turn with at least one entity: tgt is the turn with
    entity tokens replaced by their bracketed tags, position by position."""
    if len(tagged_turns) != len(dialogue.turns):
        raise AlignmentError(
            f"dialogue {dialogue.id!r}: {len(dialogue.turns)} turns but "
            f"{len(tagged_turns)} tagged sentences"
        )
    instances = []
    for t, (turn, tagged) in enumerate(zip(dialogue.turns, tagged_turns)):
        expected = [tok.surface for tok in tokenize(turn.text)]
        surfaces = [tok.surface for tok in tagged.tokens]
        if surfaces != expected:
            raise AlignmentError(
                f"dialogue {dialogue.id!r}, turn {t}: tags tokenization "
                f"{surfaces!r} does not match turn tokenization {expected!r}"
            )
        tags = list(tagged.tags)
        # Aligned left-truncation: the marker takes one of the 512 slots.
        budget = cfg.max_src_tokens - 1
        surfaces, tags = surfaces[-budget:], tags[-budget:]
        if all(tag is NerTag.O for tag in tags):
            continue
        replaced = [s if tag is NerTag.O else tag_token(tag)
                    for s, tag in zip(surfaces, tags)]
        instances.append(TrainingInstance(
            task=Task.NER,
            src=f"{NER_MARKER} " + " ".join(surfaces),
            tgt=" ".join(replaced),
            dialogue_id=dialogue.id,
            turn_index=t,
        ))
    return instances


def augment_dialogue(
    dialogue: Dialogue,
    cfg: AugmentConfig,
    graph: CoGraph | None = None,
    tagger=None,
    gazetteer: Iterable[str] = (),
) -> list[TrainingInstance]:
    """All requested task instances for one dialogue, in canonical order
    (turn index, then task dialogue < graph < ner, then entity appearance)."""
    per_turn: dict[int, list[TrainingInstance]] = {t: [] for t in range(len(dialogue.turns))}
    if Task.DIALOGUE in cfg.tasks:
        for inst in make_dialogue_instances(dialogue, cfg):
            per_turn[inst.turn_index].append(inst)
    if Task.GRAPH in cfg.tasks:
        if graph is None:
            raise ValueError("graph task requested but no graph supplied")
        for inst in make_graph_instances(dialogue, graph, cfg, gazetteer):
            per_turn[inst.turn_index].append(inst)
    if Task.NER in cfg.tasks:
        if tagger is None:
            tagger = HeuristicTagger()
        tagged = [ner_tag(tokenize(turn.text), tagger) for turn in dialogue.turns]
        for inst in make_ner_instances(dialogue, tagged, cfg):
            per_turn[inst.turn_index].append(inst)
    out: list[TrainingInstance] = []
    for t in sorted(per_turn):
        out.extend(sorted(per_turn[t], key=lambda inst: _TASK_ORDER[inst.task]))
    return out


def augment_corpus(
    corpus: Corpus,
    cfg: AugmentConfig,
    graph: CoGraph | None = None,
    tagger=None,
    gazetteer: Iterable[str] = (),
) -> list[TrainingInstance]:
    instances = []
    for dialogue in corpus.dialogues:
        instances.extend(augment_dialogue(dialogue, cfg, graph, tagger, gazetteer))
    return instances


def emit_jsonl(instances: Sequence[TrainingInstance], path) -> None:
    """Write instances as JSONL in canonical order, byte-deterministically.

    Order: dialogue (first appearance), turn index, task
    dialogue < graph < ner; the stable sort keeps entity appearance order.
    """
    dialogue_rank: dict[str, int] = {}
    for inst in instances:
        dialogue_rank.setdefault(inst.dialogue_id, len(dialogue_rank))
    ordered = sorted(
        instances,
        key=lambda inst: (dialogue_rank[inst.dialogue_id], inst.turn_index,
                          _TASK_ORDER[inst.task]),
    )
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for inst in ordered:
            f.write(json.dumps(inst.to_record(), ensure_ascii=False))
            f.write("\n")


def read_jsonl(path) -> list[TrainingInstance]:
    """Read instances back from an emitted JSONL file."""
    instances = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                meta = record.get("meta", {})
                instances.append(TrainingInstance(
                    task=Task(record["task"]),
                    src=record["src"],
                    tgt=record["tgt"],
                    dialogue_id=meta["dialogue_id"],
                    turn_index=meta["turn_index"],
                    entity=meta.get("entity"),
                ))
            except (json.JSONDecodeError, KeyError, ValueError) as exc:
                raise ValueError(f"{path}:{lineno}: bad instance record: {exc}") from exc
    return instances
