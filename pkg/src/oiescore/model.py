"""Domain types for reference and predicted relational tuples.

A tuple is an ordered collection of parts (arg1, rel, arg2, ... arg5). Each
part is a sequence of normalized tokens. Gold tokens carry their position in
the source sentence, or are flagged as inferred when annotators added or
reworded them.
"""

from __future__ import annotations

import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

SLOTS = ("arg1", "rel", "arg2", "arg3", "arg4", "arg5")
REQUIRED_SLOTS = ("arg1", "rel", "arg2")
MAX_ARGS = 5

# Bumped whenever tokenize() or normalize() change behaviour.
NORMALIZATION_ID = "nfc-casefold-punctsplit/1"

_ARG_SLOT = re.compile(r"^arg([1-9][0-9]*)$")


def normalize(word: str) -> str:
    # casefold can emit decomposed sequences, so compose again afterwards
    return unicodedata.normalize("NFC", unicodedata.normalize("NFC", word).casefold())


def slot_order(slot: str) -> int:
    """Sort key placing ``arg1`` first, then ``rel``, then ``arg2``, ``arg3``..."""
    if slot == "rel":
        return 1
    m = _ARG_SLOT.match(slot)
    if m is None:
        raise ValueError(f"unknown slot {slot!r}")
    n = int(m.group(1))
    return 0 if n == 1 else n


def arg_number(slot: str) -> Optional[int]:
    m = _ARG_SLOT.match(slot)
    return int(m.group(1)) if m else None


@dataclass(frozen=True)
class Token:
    text: str
    index: Optional[int] = None
    inferred: bool = False

    def __post_init__(self):
        if self.inferred and self.index is not None:
            raise ValueError("an inferred token cannot carry a sentence index")


@dataclass(frozen=True)
class Part:
    slot: str
    tokens: tuple[Token, ...] = ()
    resolved_text: Optional[str] = None

    def __post_init__(self):
        slot_order(self.slot)
        object.__setattr__(self, "tokens", tuple(self.tokens))

    @property
    def words(self) -> tuple[str, ...]:
        return tuple(t.text for t in self.tokens)

    @property
    def fully_inferred(self) -> bool:
        """True when the part has tokens and none of them come from the sentence."""
        return bool(self.tokens) and all(t.inferred for t in self.tokens)


@dataclass(frozen=True)
class TupleRecord:
    """One relational fact.

    The model is deliberately permissive (extra arguments, gaps between
    argument slots, empty relations are representable) so that malformed
    reference files can be loaded and reported on by ``validate_gold``.
    """

    sentence_id: str
    parts: tuple[Part, ...]
    attributed: bool = False
    confidence: Optional[float] = None
    extractor: Optional[str] = None

    def __post_init__(self):
        parts = tuple(sorted(self.parts, key=lambda p: slot_order(p.slot)))
        slots = [p.slot for p in parts]
        if len(set(slots)) != len(slots):
            raise ValueError(f"duplicate slot in tuple: {slots}")
        object.__setattr__(self, "parts", parts)

    def part(self, slot: str) -> Optional[Part]:
        for p in self.parts:
            if p.slot == slot:
                return p
        return None

    @property
    def slots(self) -> tuple[str, ...]:
        return tuple(p.slot for p in self.parts)

    @property
    def arity(self) -> int:
        """Number of argument parts (the relation is not counted)."""
        return sum(1 for p in self.parts if p.slot != "rel")

    def __str__(self):
        def show(p: Part) -> str:
            return " ".join(f"[{t.text}]" if t.inferred else t.text for t in p.tokens)

        return "(" + " ; ".join(show(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class Sentence:
    doc_id: str
    sentence_id: str
    text: str
    tokens: tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))


@dataclass(frozen=True)
class GoldSet:
    sentences: tuple[Sentence, ...]
    tuples: tuple[TupleRecord, ...]

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))
        object.__setattr__(self, "tuples", tuple(self.tuples))

    def sentence(self, sentence_id: str) -> Optional[Sentence]:
        for s in self.sentences:
            if s.sentence_id == sentence_id:
                return s
        return None

    def by_sentence(self) -> dict[str, list[TupleRecord]]:
        return group_by_sentence(self.tuples, (s.sentence_id for s in self.sentences))

    def __len__(self):
        return len(self.tuples)


@dataclass(frozen=True)
class PredictionSet:
    system_name: str
    tuples: tuple[TupleRecord, ...]
    issues: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "tuples", tuple(self.tuples))
        object.__setattr__(self, "issues", tuple(self.issues))

    def by_sentence(self) -> dict[str, list[TupleRecord]]:
        return group_by_sentence(self.tuples)

    def __len__(self):
        return len(self.tuples)


def group_by_sentence(
    tuples: Iterable[TupleRecord], sentence_ids: Iterable[str] = ()
) -> dict[str, list[TupleRecord]]:
    """Group tuples by sentence id, keeping the relative order of each group."""
    groups: dict[str, list[TupleRecord]] = {sid: [] for sid in sentence_ids}
    for t in tuples:
        groups.setdefault(t.sentence_id, []).append(t)
    return groups


def _admitted(part: Optional[Part], include_inferred: bool) -> Iterator[str]:
    if part is None:
        return
    for tok in part.tokens:
        if include_inferred or not tok.inferred:
            yield tok.text


def scored_bag(part: Optional[Part], include_inferred: bool) -> Counter:
    """Multiset of the part's words, dropping inferred ones unless asked.

    A missing part yields the empty bag.
    """
    return Counter(_admitted(part, include_inferred))


def tuple_length(t: TupleRecord, include_inferred: bool) -> int:
    return sum(sum(1 for _ in _admitted(p, include_inferred)) for p in t.parts)
