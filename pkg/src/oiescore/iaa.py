"""Inter-annotator agreement on a per-token labelling grid.

Each sentence token gets four yes/no labels: does it appear in a subject
(arg1), relation, object (arg2) or complement (arg3 and beyond) of any
tuple? Agreement is the share of grid cells two annotations agree on.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Sequence

from .model import GoldSet, Sentence, arg_number

CLASSES = ("subject", "relation", "object", "complement")


def _class_of(slot: str) -> int:
    if slot == "rel":
        return 1
    n = arg_number(slot)
    return 0 if n == 1 else 2 if n == 2 else 3


@dataclass(frozen=True)
class TokenGrid:
    sentence_id: str
    cells: tuple[tuple[bool, bool, bool, bool], ...]

    @property
    def rows(self) -> int:
        return len(self.cells)

    def marked(self, cls: str) -> set[int]:
        c = CLASSES.index(cls)
        return {i for i, row in enumerate(self.cells) if row[c]}


def token_grid(annotation: GoldSet, s: Sentence) -> TokenGrid:
    grid = [[False] * len(CLASSES) for _ in s.tokens]
    for t in annotation.tuples:
        if t.sentence_id != s.sentence_id:
            continue
        for p in t.parts:
            c = _class_of(p.slot)
            for tok in p.tokens:
                # inferred words have no row to land in
                if tok.index is not None and tok.index < len(grid):
                    grid[tok.index][c] = True
    return TokenGrid(s.sentence_id, tuple(tuple(row) for row in grid))


def agreeing_cells(a: TokenGrid, b: TokenGrid) -> int:
    if a.rows != b.rows:
        raise ValueError(f"grids differ in size: {a.rows} vs {b.rows} tokens")
    return sum(x == y for ra, rb in zip(a.cells, b.cells) for x, y in zip(ra, rb))


def grid_agreement(a: TokenGrid, b: TokenGrid) -> float:
    """Percentage of equal cells. An empty sentence counts as full agreement."""
    agree = agreeing_cells(a, b)
    total = a.rows * len(CLASSES)
    return 100.0 * agree / total if total else 100.0


def corpus_agreement(per_sentence: Sequence[tuple[int, float]]) -> float:
    """Token-weighted mean of per-sentence agreements."""
    if not per_sentence:
        raise ValueError("no sentences to average")
    tokens = sum(n for n, _ in per_sentence)
    if tokens == 0:
        raise ValueError("sentences have no tokens")
    return sum(n * v for n, v in per_sentence) / tokens


def fmt_pct(value: float, places: int = 1) -> str:
    """Round half-up for display, so 93.75 shows as 93.8."""
    q = Decimal(1).scaleb(-places)
    return str(Decimal(repr(value)).quantize(q, rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class AgreementTable:
    """Per-sentence agreement for each compared pair of annotations."""

    columns: tuple[str, ...]
    sentence_ids: tuple[str, ...]
    token_counts: tuple[int, ...]
    values: tuple[tuple[float, ...], ...]  # one row per sentence

    def averages(self) -> tuple[float, ...]:
        return tuple(
            corpus_agreement(list(zip(self.token_counts, (row[c] for row in self.values))))
            for c in range(len(self.columns))
        )

    def render(self) -> str:
        head = ["", "# tokens", *self.columns]
        rows = [
            [sid, str(n), *(fmt_pct(v) for v in vals)]
            for sid, n, vals in zip(self.sentence_ids, self.token_counts, self.values)
        ]
        rows.append(["Average", "", *(fmt_pct(v) for v in self.averages())])
        widths = [max(len(r[i]) for r in [head, *rows]) for i in range(len(head))]
        lines = []
        for k, r in enumerate([head, *rows]):
            lines.append("  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(r, widths))))
            if k == 0 or k == len(rows) - 1:
                lines.append("-" * len(lines[-1]))
        return "\n".join(lines)


def agreement_table(annotations: dict[str, GoldSet], pairs: Sequence[tuple[str, str]]) -> AgreementTable:
    """Compare named annotations of the same sentences.

    Sentences (and their tokens) are taken from the first annotation named
    in ``pairs``.
    """
    base = annotations[pairs[0][0]]
    ids, counts, values = [], [], []
    for s in base.sentences:
        grids = {name: token_grid(ann, s) for name, ann in annotations.items()}
        ids.append(s.sentence_id)
        counts.append(len(s.tokens))
        values.append(tuple(grid_agreement(grids[a], grids[b]) for a, b in pairs))
    return AgreementTable(
        tuple(f"{a}<->{b}" for a, b in pairs), tuple(ids), tuple(counts), tuple(values)
    )
