"""Munchkin: a deliberately dishonest extractor.

For a sentence ``w0 w1 ... wn`` it emits ``(w0 ; w1 ; w2..wn)``,
``(w0 ; w1 w2 ; w3..wn)`` and so on, with decreasing confidence. Every
tuple is the whole sentence, so a scorer that does not penalize long or
misplaced spans will rate it highly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .model import Part, Sentence, Token, TupleRecord

NAME = "munchkin"


@dataclass(frozen=True)
class MunchkinConfig:
    max_tuples_per_sentence: Optional[int] = None  # None: every split point

    def __post_init__(self):
        if self.max_tuples_per_sentence is not None and self.max_tuples_per_sentence < 1:
            raise ValueError("max_tuples_per_sentence must be at least 1")


def _part(slot, words):
    return Part(slot, tuple(Token(w) for w in words))


def munchkin_extract(s: Sentence, cfg: MunchkinConfig = MunchkinConfig()) -> list[TupleRecord]:
    w = s.tokens
    n = len(w) - 1
    if n < 2:
        return []
    out = []
    for k in range(2, n + 1):
        parts = (_part("arg1", w[:1]), _part("rel", w[1:k]), _part("arg2", w[k:]))
        conf = 1.0 - (k - 2) / (n - 1)
        out.append(TupleRecord(s.sentence_id, parts, confidence=conf, extractor=NAME))
    if cfg.max_tuples_per_sentence is not None:
        out = out[: cfg.max_tuples_per_sentence]
    return out


def munchkin_corpus(sentences: Iterable[Sentence], cfg: MunchkinConfig = MunchkinConfig()) -> list[TupleRecord]:
    return [t for s in sentences for t in munchkin_extract(s, cfg)]
