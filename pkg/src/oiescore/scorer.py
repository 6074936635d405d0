"""Token-level scoring of predicted tuples against reference tuples.

Predicted and gold tuples from the same sentence are paired one-to-one by
repeatedly taking the candidate pair with the highest F1. System precision
and recall are then token-weighted sums over every tuple, matched or not.

Inferred gold words are never required: they are left out of recall
numerators and denominators and are not needed for a match. A predicted
word that equals an inferred gold word still counts as correct for
precision, so a prediction is not punished for supplying it. Exact matches
require them by default.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional, Sequence

from .model import (
    REQUIRED_SLOTS,
    GoldSet,
    PredictionSet,
    TupleRecord,
    group_by_sentence,
    scored_bag,
    tuple_length,
)


class NotACandidate(ValueError):
    """Raised when scoring a pair that cannot match."""


@dataclass(frozen=True)
class PairScore:
    pred_id: int
    gold_id: int
    shared: int  # words matched against the gold tuple's sentence words
    shared_pred: int  # words matched against the full gold tuple, inferred words included
    pred_length: int
    gold_length: int
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class Matching:
    pairs: tuple[PairScore, ...]
    unmatched_preds: tuple[int, ...]
    unmatched_golds: tuple[int, ...]


def _waived(g: TupleRecord, slot: str) -> bool:
    return not scored_bag(g.part(slot), include_inferred=False)


def may_match(t: TupleRecord, g: TupleRecord) -> bool:
    """Whether ``t`` shares a word with ``g`` in each of arg1, rel and arg2.

    A gold slot with no sentence words (absent, or made only of inferred
    words) is not required. A gold tuple with no sentence words in any of
    the three slots cannot be matched at all.
    """
    required = [s for s in REQUIRED_SLOTS if not _waived(g, s)]
    if not required:
        return False
    for slot in required:
        gold_bag = scored_bag(g.part(slot), include_inferred=False)
        pred_bag = scored_bag(t.part(slot), include_inferred=True)
        if not gold_bag & pred_bag:
            return False
    return True


def _overlap(t: TupleRecord, g: TupleRecord, include_inferred: bool) -> int:
    total = 0
    for slot in set(t.slots) | set(g.slots):
        common = scored_bag(t.part(slot), True) & scored_bag(g.part(slot), include_inferred)
        total += sum(common.values())
    return total


def shared_count(t: TupleRecord, g: TupleRecord) -> int:
    """Per-slot multiset overlap with the gold tuple's sentence words."""
    return _overlap(t, g, include_inferred=False)


def pair_score(t: TupleRecord, g: TupleRecord, pred_id: int = 0, gold_id: int = 0) -> PairScore:
    if not may_match(t, g):
        raise NotACandidate(f"{t} cannot match {g}")
    sr = shared_count(t, g)
    sp = _overlap(t, g, include_inferred=True)
    lt = tuple_length(t, include_inferred=True)
    lg = tuple_length(g, include_inferred=False)
    # 2pr/(p+r) as one integer ratio, so equal F1 values compare equal as floats
    f1 = 2 * sp * sr / (sp * lg + sr * lt)
    return PairScore(pred_id, gold_id, sr, sp, lt, lg, sp / lt, sr / lg, f1)


def candidate_pairs(preds: Sequence[TupleRecord], golds: Sequence[TupleRecord]) -> list[PairScore]:
    return [
        pair_score(t, g, i, j)
        for i, t in enumerate(preds)
        for j, g in enumerate(golds)
        if may_match(t, g)
    ]


def greedy_match(preds: Sequence[TupleRecord], golds: Sequence[TupleRecord]) -> Matching:
    """Pair tuples by repeatedly taking the best remaining candidate.

    Best means highest F1, then most shared words, then lowest gold index,
    then lowest prediction index. Pairs are returned in selection order.
    """
    pool = sorted(
        candidate_pairs(preds, golds),
        key=lambda s: (-s.f1, -s.shared, s.gold_id, s.pred_id),
    )
    used_p: set[int] = set()
    used_g: set[int] = set()
    chosen = []
    # taking pairs in key order while skipping used tuples is the same as
    # re-selecting the maximum from the shrinking pool after every removal
    for s in pool:
        if s.pred_id in used_p or s.gold_id in used_g:
            continue
        chosen.append(s)
        used_p.add(s.pred_id)
        used_g.add(s.gold_id)
    return Matching(
        tuple(chosen),
        tuple(i for i in range(len(preds)) if i not in used_p),
        tuple(j for j in range(len(golds)) if j not in used_g),
    )


def exact_match(t: TupleRecord, g: TupleRecord, include_inferred: bool = True) -> bool:
    """Same slots, and the same words in the same order in every slot.

    With ``include_inferred`` (the default) the prediction must also
    contain the gold tuple's inferred words.
    """
    if t.slots != g.slots:
        return False
    for pt, pg in zip(t.parts, g.parts):
        gold_words = [tok.text for tok in pg.tokens if include_inferred or not tok.inferred]
        if list(pt.words) != gold_words:
            return False
    return True


@dataclass
class ScoreReport:
    system_name: str
    extractions: int
    matches: int
    exact_matches: int
    prec_of_matches: float
    recall_of_matches: float
    precision_sys: float
    recall_sys: float
    f1_sys: float
    gold_tuples: int = 0
    shared_tokens: int = 0
    shared_pred_tokens: int = 0
    predicted_tokens: int = 0
    gold_tokens: int = 0
    # token-weighted alternatives to the macro-averaged match columns
    prec_of_matches_weighted: float = 0.0
    recall_of_matches_weighted: float = 0.0
    no_extractions: bool = False
    flags: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return asdict(self)


def _div(a: float, b: float) -> float:
    return a / b if b else 0.0


def _f1(p: float, r: float) -> float:
    return _div(2 * p * r, p + r)


def match_all(gold: GoldSet, preds: PredictionSet | Iterable[TupleRecord]) -> dict[str, Matching]:
    """Run greedy matching sentence by sentence."""
    tuples = preds.tuples if isinstance(preds, PredictionSet) else tuple(preds)
    gold_groups = gold.by_sentence()
    pred_groups = group_by_sentence(tuples)
    return {
        sid: greedy_match(pred_groups.get(sid, []), gold_groups.get(sid, []))
        for sid in sorted(set(gold_groups) | set(pred_groups))
    }


def system_scores(
    matchings: dict[str, Matching],
    gold: GoldSet,
    preds: PredictionSet | Iterable[TupleRecord],
    system_name: Optional[str] = None,
    include_inferred_in_exact: bool = True,
) -> ScoreReport:
    if isinstance(preds, PredictionSet):
        system_name = system_name or preds.system_name
        tuples = preds.tuples
    else:
        tuples = tuple(preds)
    gold_groups = gold.by_sentence()
    pred_groups = group_by_sentence(tuples)

    pred_tokens = sum(tuple_length(t, True) for t in tuples)
    gold_tokens = sum(tuple_length(g, False) for g in gold.tuples)

    shared = shared_pred = exact = 0
    precisions, recalls = [], []
    matched_pred_len = matched_gold_len = 0
    n_pairs = 0
    for sid, m in matchings.items():
        p_list, g_list = pred_groups.get(sid, []), gold_groups.get(sid, [])
        for s in m.pairs:
            n_pairs += 1
            shared += s.shared
            shared_pred += s.shared_pred
            precisions.append(s.precision)
            recalls.append(s.recall)
            matched_pred_len += s.pred_length
            matched_gold_len += s.gold_length
            exact += exact_match(p_list[s.pred_id], g_list[s.gold_id], include_inferred_in_exact)

    p = _div(shared_pred, pred_tokens)
    r = _div(shared, gold_tokens)
    flags = []
    if not tuples:
        flags.append("no extractions")
    if not gold_tokens:
        flags.append("no gold tokens")
    return ScoreReport(
        system_name=system_name or "system",
        extractions=len(tuples),
        matches=n_pairs,
        exact_matches=exact,
        prec_of_matches=_div(sum(precisions), len(precisions)),
        recall_of_matches=_div(sum(recalls), len(recalls)),
        precision_sys=p,
        recall_sys=r,
        f1_sys=_f1(p, r),
        gold_tuples=len(gold.tuples),
        shared_tokens=shared,
        shared_pred_tokens=shared_pred,
        predicted_tokens=pred_tokens,
        gold_tokens=gold_tokens,
        prec_of_matches_weighted=_div(shared_pred, matched_pred_len),
        recall_of_matches_weighted=_div(shared, matched_gold_len),
        no_extractions=not tuples,
        flags=flags,
    )


def score(
    gold: GoldSet,
    preds: PredictionSet | Iterable[TupleRecord],
    system_name: Optional[str] = None,
    include_inferred_in_exact: bool = True,
) -> ScoreReport:
    """Match and score in one call."""
    if not isinstance(preds, PredictionSet):
        preds = tuple(preds)
    return system_scores(match_all(gold, preds), gold, preds, system_name, include_inferred_in_exact)


def confidence_sweep(
    preds: PredictionSet | Iterable[TupleRecord],
    gold: GoldSet,
    thresholds: Sequence[float],
) -> list[tuple[float, float, float]]:
    """Precision and recall keeping only predictions at or above each threshold.

    A missing confidence counts as 1.0.
    """
    if list(thresholds) != sorted(thresholds):
        raise ValueError("thresholds must be sorted in ascending order")
    tuples = preds.tuples if isinstance(preds, PredictionSet) else tuple(preds)
    out = []
    for th in thresholds:
        kept = [t for t in tuples if (1.0 if t.confidence is None else t.confidence) >= th]
        rep = score(gold, kept)
        out.append((th, rep.precision_sys, rep.recall_sys))
    return out
