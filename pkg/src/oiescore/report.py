"""Rendering of score and statistics reports."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Sequence

from . import __version__
from .ingest import StatsReport
from .model import NORMALIZATION_ID
from .scorer import ScoreReport


@dataclass
class RunManifest:
    command: str
    inputs: list
    options: dict = field(default_factory=dict)
    version: str = __version__
    normalization: str = NORMALIZATION_ID
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))


def report_json(payload: dict, manifest: RunManifest) -> str:
    doc = {"manifest": asdict(manifest), **payload}
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


SCORE_COLUMNS = (
    ("Extractions", "extractions", "d"),
    ("Matches", "matches", "d"),
    ("Exact matches", "exact_matches", "d"),
    ("Prec. of matches", "prec_of_matches", ".2f"),
    ("Recall of matches", "recall_of_matches", ".2f"),
    ("Prec.", "precision_sys", ".3f"),
    ("Recall", "recall_sys", ".3f"),
    ("F1", "f1_sys", ".3f"),
)


def _strip_zero(s: str) -> str:
    # .400 rather than 0.400, as in published result tables
    return s[1:] if s.startswith("0.") else s


def score_table(reports: Sequence[ScoreReport]) -> str:
    head = ["System"] + [c[0] for c in SCORE_COLUMNS]
    rows = []
    for r in reports:
        cells = [r.system_name]
        for _, attr, spec in SCORE_COLUMNS:
            cells.append(_strip_zero(format(getattr(r, attr), spec)))
        if r.no_extractions:
            cells[0] += " (no extractions)"
        rows.append(cells)
    widths = [max(len(row[i]) for row in [head, *rows]) for i in range(len(head))]
    lines = ["  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(row, widths))) for row in [head, *rows]]
    lines.insert(1, "-" * len(lines[0]))
    return "\n".join(lines)


def sweep_table(name: str, points: Sequence[tuple[float, float, float]]) -> str:
    lines = [f"{name}", f"{'threshold':>9}  {'prec.':>6}  {'recall':>6}"]
    for th, p, r in points:
        lines.append(f"{th:9.3f}  {p:6.3f}  {r:6.3f}")
    return "\n".join(lines)


def stats_table(st: StatsReport) -> str:
    rows = [
        ("All tuples", str(st.tuples), "100" if st.tuples else "0"),
        ("Anaphora", str(st.anaphora), f"{st.share(st.anaphora):.0f}"),
        ("Contains inferred words", str(st.contains_inferred), f"{st.share(st.contains_inferred):.0f}"),
        ("Hallucinated relation", str(st.hallucinated), f"{st.share(st.hallucinated):.0f}"),
    ]
    for k in sorted(st.arity):
        label = "Binary relations" if k == 2 else f"n-ary, n = {k}"
        rows.append((label, str(st.arity[k]), f"{st.share(st.arity[k]):.1f}"))
    rows.append(("Inferred words", f"{st.inferred_tokens}/{st.all_tokens}", f"{st.inferred_ratio:.1f}"))
    w0 = max(len(r[0]) for r in rows)
    w1 = max(len(r[1]) for r in rows)
    out = [f"{'Phenomenon'.ljust(w0)}  {'N'.rjust(w1)}  {'%':>5}"]
    out.append("-" * len(out[0]))
    out += [f"{a.ljust(w0)}  {b.rjust(w1)}  {c:>5}" for a, b, c in rows]
    out += [f"note: {n}" for n in st.notes]
    return "\n".join(out)
