"""Reading and writing reference and prediction files.

Reference (gold) files are JSON::

    [{"doc_id": "CH",
      "sentences": [{"sentence_id": "CH 7", "text": "...",
                     "tuples": [{"attributed": false,
                                 "parts": {"arg1": {"tokens": [{"text": "His", "index": 0}, ...],
                                                    "resolved_text": "Chilly Gonzales's parents"},
                                           "rel": {"tokens": [{"text": "has", "index": "inf"}]},
                                           ...}}]}]}]

Predictions come either as a JSON array of uniform records or as TSV rows
``sentence_id, confidence, arg1, rel, arg2, [argN...]``.
"""

from __future__ import annotations

import csv
import json
import math
import os
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .model import (
    MAX_ARGS,
    SLOTS,
    GoldSet,
    Part,
    PredictionSet,
    Sentence,
    Token,
    TupleRecord,
    arg_number,
    normalize,
    slot_order,
)

INFERRED_MARK = "inf"


class LoadError(Exception):
    """Base class for problems found while reading an input file."""


class ParseError(LoadError):
    pass


class IntegrityError(LoadError):
    """A gold token does not agree with the sentence it claims to come from."""


@dataclass(frozen=True)
class ValidationIssue:
    severity: str  # "error" or "warning"
    location: str
    message: str

    def __str__(self):
        return f"{self.severity}: {self.location}: {self.message}"


# -- tokenization -------------------------------------------------------------


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def _split_chunk(chunk: str) -> list[str]:
    start, end = 0, len(chunk)
    while start < end and _is_punct(chunk[start]):
        start += 1
    while end > start and _is_punct(chunk[end - 1]):
        end -= 1
    return list(chunk[:start]) + ([chunk[start:end]] if start < end else []) + list(chunk[end:])


def tokenize(text: str) -> list[str]:
    """Whitespace tokenization with edge punctuation split off, then normalized.

    >>> tokenize("Tokyo is the capital of Japan.")
    ['tokyo', 'is', 'the', 'capital', 'of', 'japan', '.']
    """
    out = []
    for chunk in unicodedata.normalize("NFC", text).split():
        for piece in _split_chunk(chunk):
            word = normalize(piece)
            if word.strip():
                out.append(word)
    return out


# -- gold files ---------------------------------------------------------------


def _require(obj, key, where, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"{where}.{key}: expected {kind.__name__}, got {type(value).__name__}")
    return value


def _parse_gold_token(raw, where: str) -> Token:
    text = _require(raw, "text", where, str)
    word = normalize(text.strip())
    if not word:
        raise ParseError(f"{where}: empty token text")
    index = raw.get("index", INFERRED_MARK)
    if index == INFERRED_MARK or index is None:
        return Token(word, None, inferred=True)
    if isinstance(index, bool) or not isinstance(index, int) or index < 0:
        raise ParseError(f"{where}: index must be a non-negative integer or {INFERRED_MARK!r}")
    return Token(word, index)


def _parse_gold_tuple(raw, sentence_id: str, where: str) -> TupleRecord:
    parts_raw = _require(raw, "parts", where, dict)
    parts = []
    for slot, praw in parts_raw.items():
        pwhere = f"{where}.{slot}"
        try:
            slot_order(slot)
        except ValueError:
            raise ParseError(f"{pwhere}: unknown slot") from None
        toks = _require(praw, "tokens", pwhere, list)
        tokens = tuple(_parse_gold_token(t, f"{pwhere}[{i}]") for i, t in enumerate(toks))
        resolved = praw.get("resolved_text")
        if resolved is not None and not isinstance(resolved, str):
            raise ParseError(f"{pwhere}.resolved_text: expected a string")
        parts.append(Part(slot, tokens, resolved))
    attributed = raw.get("attributed", False)
    if not isinstance(attributed, bool):
        raise ParseError(f"{where}.attributed: expected a boolean")
    return TupleRecord(sentence_id, tuple(parts), attributed=attributed)


def gold_from_data(data) -> GoldSet:
    """Build a GoldSet from already-decoded JSON, checking token provenance."""
    if not isinstance(data, list):
        raise ParseError("gold file must contain a list of documents")
    sentences, tuples = [], []
    for d, doc in enumerate(data):
        dwhere = f"documents[{d}]"
        doc_id = str(_require(doc, "doc_id", dwhere))
        for s, sraw in enumerate(_require(doc, "sentences", dwhere, list)):
            swhere = f"{dwhere}.sentences[{s}]"
            sid = str(_require(sraw, "sentence_id", swhere))
            text = _require(sraw, "text", swhere, str)
            sent = Sentence(str(sraw.get("doc_id", doc_id)), sid, text, tuple(tokenize(text)))
            sentences.append(sent)
            for k, traw in enumerate(sraw.get("tuples", [])):
                twhere = f"{sid}/tuples[{k}]"
                t = _parse_gold_tuple(traw, sid, twhere)
                for issue in _provenance_issues(t, sent, twhere):
                    raise IntegrityError(f"{issue.location}: {issue.message}")
                tuples.append(t)
    return GoldSet(tuple(sentences), tuple(tuples))


def load_gold(path) -> GoldSet:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise ParseError(f"{path}: {e}") from None
    return gold_from_data(data)


def gold_to_data(gold: GoldSet) -> list:
    by_sent = gold.by_sentence()
    docs: dict[str, dict] = {}
    for s in gold.sentences:
        doc = docs.setdefault(s.doc_id, {"doc_id": s.doc_id, "sentences": []})
        doc["sentences"].append(
            {
                "sentence_id": s.sentence_id,
                "text": s.text,
                "tuples": [_tuple_to_data(t) for t in by_sent.get(s.sentence_id, [])],
            }
        )
    return list(docs.values())


def _tuple_to_data(t: TupleRecord) -> dict:
    parts = {}
    for p in t.parts:
        entry = {
            "tokens": [
                {"text": tok.text, "index": INFERRED_MARK if tok.index is None else tok.index}
                for tok in p.tokens
            ]
        }
        if p.resolved_text is not None:
            entry["resolved_text"] = p.resolved_text
        parts[p.slot] = entry
    return {"attributed": t.attributed, "parts": parts}


def dump_gold(gold: GoldSet, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(gold_to_data(gold), fh, ensure_ascii=False, indent=1)
        fh.write("\n")


# -- validation ---------------------------------------------------------------


def _provenance_issues(t: TupleRecord, sent: Optional[Sentence], where: str):
    for p in t.parts:
        for i, tok in enumerate(p.tokens):
            loc = f"{where}.{p.slot}[{i}]"
            if tok.inferred:
                continue
            if tok.index is None:
                yield ValidationIssue("error", loc, f"token {tok.text!r} is neither indexed nor inferred")
            elif sent is None:
                continue
            elif tok.index >= len(sent.tokens):
                yield ValidationIssue(
                    "error", loc, f"index {tok.index} past sentence end ({len(sent.tokens)} tokens)"
                )
            elif sent.tokens[tok.index] != tok.text:
                yield ValidationIssue(
                    "error",
                    loc,
                    f"token {tok.text!r} does not match sentence token "
                    f"{tok.index} {sent.tokens[tok.index]!r}",
                )


def validate_gold(gold: GoldSet) -> list[ValidationIssue]:
    issues: list[ValidationIssue] = []
    seen: set[str] = set()
    for s in gold.sentences:
        if s.sentence_id in seen:
            issues.append(ValidationIssue("error", s.sentence_id, "duplicate sentence id"))
        seen.add(s.sentence_id)
        if tuple(tokenize(s.text)) != s.tokens:
            issues.append(ValidationIssue("error", s.sentence_id, "stored tokens differ from tokenize(text)"))

    counters: Counter = Counter()
    for t in gold.tuples:
        where = f"{t.sentence_id}/tuples[{counters[t.sentence_id]}]"
        counters[t.sentence_id] += 1
        sent = gold.sentence(t.sentence_id)
        if sent is None:
            issues.append(ValidationIssue("error", where, "unknown sentence id"))
        issues.extend(_provenance_issues(t, sent, where))
        issues.extend(_structure_issues(t, where))
    return issues


def _structure_issues(t: TupleRecord, where: str):
    for slot in ("arg1", "rel"):
        p = t.part(slot)
        if p is None:
            yield ValidationIssue("error", where, f"missing mandatory part {slot}")
    args = sorted(n for n in (arg_number(s) for s in t.slots) if n is not None)
    if args and args[-1] > MAX_ARGS:
        yield ValidationIssue("error", where, f"{args[-1]} arguments (at most {MAX_ARGS} allowed)")
    if args != list(range(1, len(args) + 1)):
        yield ValidationIssue("error", where, f"argument slots are not contiguous: {list(t.slots)}")
    for p in t.parts:
        loc = f"{where}.{p.slot}"
        if not p.tokens:
            yield ValidationIssue("error", loc, "part has no tokens")
        for i, tok in enumerate(p.tokens):
            if len(tokenize(tok.text)) != 1:
                yield ValidationIssue(
                    "warning", f"{loc}[{i}]", f"token {tok.text!r} does not tokenize to a single word"
                )
        if p.resolved_text is not None:
            if not p.resolved_text.strip():
                yield ValidationIssue("error", loc, "empty resolved_text")
            elif tokenize(p.resolved_text) == list(p.words):
                yield ValidationIssue("warning", loc, "resolved_text is identical to the raw span")


# -- predictions --------------------------------------------------------------


def _text_part(slot: str, text) -> Part:
    return Part(slot, tuple(Token(w) for w in tokenize(text)))


def build_prediction(
    sentence_id: str,
    arg1: str,
    rel: str,
    args: Iterable[str] = (),
    confidence: Optional[float] = 1.0,
    extractor: Optional[str] = None,
) -> TupleRecord:
    """Make a predicted tuple from surface strings.

    ``args`` are the arguments after arg1. Empty ones are dropped; anything
    beyond the fifth argument is appended to arg5.
    """
    parts = [_text_part("arg1", arg1), _text_part("rel", rel)]
    extra = [a for a in (_text_part("arg2", a) for a in args) if a.tokens]
    tail = extra[: MAX_ARGS - 1]
    for p in extra[MAX_ARGS - 1 :]:
        tail[-1] = Part(tail[-1].slot, tail[-1].tokens + p.tokens)
    for n, p in enumerate(tail, start=2):
        parts.append(Part(f"arg{n}", p.tokens))
    return TupleRecord(sentence_id, tuple(parts), confidence=confidence, extractor=extractor)


def _confidence(value, where: str) -> float:
    if value is None:
        return 1.0
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{where}: confidence must be a number")
    value = float(value)
    if math.isnan(value):
        raise ParseError(f"{where}: confidence is NaN")
    return min(1.0, max(0.0, value))


def _read_uniform(fh) -> list[TupleRecord]:
    try:
        data = json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(str(e)) from None
    if not isinstance(data, list):
        raise ParseError("uniform prediction file must contain a JSON array")
    out = []
    for i, rec in enumerate(data):
        where = f"[{i}]"
        sid = str(_require(rec, "sentence_id", where))
        arg1 = _require(rec, "arg1", where, str)
        rel = _require(rec, "rel", where, str)
        args = []
        if rec.get("arg2") is not None:
            args.append(_require(rec, "arg2", where, str))
        more = rec.get("args") or []
        if not isinstance(more, list) or not all(isinstance(a, str) for a in more):
            raise ParseError(f"{where}.args: expected a list of strings")
        args.extend(more)
        extractor = rec.get("extractor")
        out.append(
            build_prediction(
                sid,
                arg1,
                rel,
                args,
                _confidence(rec.get("confidence"), where),
                None if extractor is None else str(extractor),
            )
        )
    return out


def _read_tsv(fh) -> list[TupleRecord]:
    out = []
    for lineno, row in enumerate(csv.reader(fh, delimiter="\t", quoting=csv.QUOTE_NONE), start=1):
        if not row or not any(c.strip() for c in row):
            continue
        if lineno == 1 and row[0].strip().lower() == "sentence_id":
            continue
        where = f"line {lineno}"
        sid, rest = row[0].strip(), row[1:]
        conf: Optional[float] = 1.0
        # the confidence column may be blank, or left out entirely
        if rest and not rest[0].strip():
            rest = rest[1:]
        elif rest:
            try:
                conf = _confidence(float(rest[0]), where)
                rest = rest[1:]
            except ValueError:
                pass
        if len(rest) < 2:
            raise ParseError(f"{where}: expected at least arg1 and rel columns")
        out.append(build_prediction(sid, rest[0], rest[1], rest[2:], conf))
    return out


def load_predictions(
    path,
    format: str = "uniform",
    known_sentence_ids: Optional[Iterable[str]] = None,
    system_name: Optional[str] = None,
) -> PredictionSet:
    readers = {"uniform": _read_uniform, "tsv": _read_tsv}
    if format not in readers:
        raise ValueError(f"unknown prediction format {format!r}")
    with open(path, encoding="utf-8", newline="") as fh:
        try:
            tuples = readers[format](fh)
        except ParseError as e:
            raise ParseError(f"{path}: {e}") from None

    if system_name is None:
        names = {t.extractor for t in tuples}
        if len(names) == 1 and None not in names:
            system_name = names.pop()
        else:
            system_name = os.path.splitext(os.path.basename(str(path)))[0]

    issues = []
    if known_sentence_ids is not None:
        known = set(known_sentence_ids)
        for i, t in enumerate(tuples):
            if t.sentence_id not in known:
                issues.append(
                    ValidationIssue("warning", f"{path}[{i}]", f"unknown sentence id {t.sentence_id!r}")
                )
    return PredictionSet(system_name, tuple(tuples), tuple(issues))


def predictions_to_data(tuples: Iterable[TupleRecord]) -> list:
    out = []
    for t in tuples:
        rec = {"sentence_id": t.sentence_id}
        for p in t.parts:
            text = " ".join(p.words)
            n = arg_number(p.slot)
            if n is not None and n >= 3:
                rec.setdefault("args", []).append(text)
            else:
                rec[p.slot] = text
        if t.confidence is not None:
            rec["confidence"] = t.confidence
        if t.extractor is not None:
            rec["extractor"] = t.extractor
        out.append(rec)
    return out


def write_predictions(tuples: Iterable[TupleRecord], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(predictions_to_data(tuples), fh, ensure_ascii=False, indent=1)
        fh.write("\n")


def gold_as_predictions(gold: GoldSet, system_name: str = "gold") -> PredictionSet:
    """Turn reference tuples into predictions, writing out their inferred words."""
    tuples = []
    for g in gold.tuples:
        parts = tuple(Part(p.slot, tuple(Token(tok.text) for tok in p.tokens)) for p in g.parts)
        tuples.append(TupleRecord(g.sentence_id, parts, confidence=1.0, extractor=system_name))
    return PredictionSet(system_name, tuple(tuples))


# -- resource statistics ------------------------------------------------------


@dataclass(frozen=True)
class StatsReport:
    tuples: int
    anaphora: int
    contains_inferred: int
    hallucinated: int
    arity: dict = field(default_factory=dict)
    inferred_tokens: int = 0
    all_tokens: int = 0
    notes: tuple[str, ...] = (
        "anaphora counts tuples with at least one coreference-resolved part",
        "hallucinated counts tuples whose relation is made only of inferred words",
    )

    def share(self, count: int) -> float:
        return 100.0 * count / self.tuples if self.tuples else 0.0

    @property
    def inferred_ratio(self) -> float:
        return 100.0 * self.inferred_tokens / self.all_tokens if self.all_tokens else 0.0

    def as_dict(self) -> dict:
        return {
            "tuples": self.tuples,
            "anaphora": self.anaphora,
            "contains_inferred": self.contains_inferred,
            "hallucinated": self.hallucinated,
            "arity": {str(k): v for k, v in sorted(self.arity.items())},
            "inferred_tokens": self.inferred_tokens,
            "all_tokens": self.all_tokens,
            "inferred_ratio": self.inferred_ratio,
            "notes": list(self.notes),
        }


def resource_stats(gold: GoldSet) -> StatsReport:
    anaphora = inferred = hallucinated = inf_tokens = all_tokens = 0
    arity: Counter = Counter()
    for t in gold.tuples:
        toks = [tok for p in t.parts for tok in p.tokens]
        n_inf = sum(tok.inferred for tok in toks)
        all_tokens += len(toks)
        inf_tokens += n_inf
        inferred += n_inf > 0
        anaphora += any(p.resolved_text is not None for p in t.parts)
        rel = t.part("rel")
        hallucinated += rel is not None and rel.fully_inferred
        arity[t.arity] += 1
    return StatsReport(
        tuples=len(gold.tuples),
        anaphora=anaphora,
        contains_inferred=inferred,
        hallucinated=hallucinated,
        arity=dict(arity),
        inferred_tokens=inf_tokens,
        all_tokens=all_tokens,
    )


__all__ = [
    "INFERRED_MARK",
    "SLOTS",
    "IntegrityError",
    "LoadError",
    "ParseError",
    "StatsReport",
    "ValidationIssue",
    "build_prediction",
    "dump_gold",
    "gold_as_predictions",
    "gold_from_data",
    "gold_to_data",
    "load_gold",
    "load_predictions",
    "predictions_to_data",
    "resource_stats",
    "tokenize",
    "validate_gold",
    "write_predictions",
]
