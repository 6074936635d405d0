"""Command line interface.

Exit codes: 0 success, 1 unreadable or unwritable file, 2 invalid input
(malformed file, gold integrity or validation errors, mismatched
annotations).
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from . import __version__
from .baseline import MunchkinConfig, munchkin_corpus
from .iaa import agreement_table
from .ingest import LoadError, load_gold, load_predictions, resource_stats, validate_gold, write_predictions
from .report import RunManifest, report_json, score_table, stats_table, sweep_table
from .scorer import confidence_sweep, score

EXIT_OK, EXIT_IO, EXIT_INVALID = 0, 1, 2


class _Invalid(Exception):
    pass


def _err(msg: str) -> None:
    print(f"oiescore: {msg}", file=sys.stderr)


def _load_checked_gold(path, strict: bool):
    gold = load_gold(path)
    issues = validate_gold(gold)
    for issue in issues:
        _err(str(issue))
    bad = [i for i in issues if i.severity == "error" or strict]
    if bad:
        raise _Invalid(f"{path}: {len(bad)} validation problem(s)")
    return gold


def _write(path, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _report_path(out: str, name: str, suffix: str = "") -> str:
    safe = "".join(c if c.isalnum() or c in "-_." else "_" for c in name)
    return os.path.join(out, f"{safe}{suffix}.json")


def cmd_score(args) -> int:
    gold = _load_checked_gold(args.gold, args.strict)
    ids = [s.sentence_id for s in gold.sentences]
    reports = []
    for path in args.predictions:
        preds = load_predictions(path, args.format, known_sentence_ids=ids)
        for issue in preds.issues:
            _err(str(issue))
        if args.strict and preds.issues:
            raise _Invalid(f"{path}: prediction warnings under --strict")
        reports.append(score(gold, preds, include_inferred_in_exact=args.include_inferred_in_exact))
    print(score_table(reports))
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for path, rep in zip(args.predictions, reports):
            manifest = RunManifest(
                "score",
                [args.gold, path],
                {"format": args.format, "include_inferred_in_exact": args.include_inferred_in_exact},
            )
            _write(_report_path(args.out, rep.system_name), report_json({"report": rep.as_dict()}, manifest))
    return EXIT_OK


def cmd_sweep(args) -> int:
    gold = _load_checked_gold(args.gold, args.strict)
    thresholds = sorted(float(x) for x in args.thresholds.split(","))
    ids = [s.sentence_id for s in gold.sentences]
    for path in args.predictions:
        preds = load_predictions(path, args.format, known_sentence_ids=ids)
        points = confidence_sweep(preds, gold, thresholds)
        print(sweep_table(preds.system_name, points))
        if args.out:
            os.makedirs(args.out, exist_ok=True)
            manifest = RunManifest("sweep", [args.gold, path], {"format": args.format, "thresholds": thresholds})
            payload = {
                "system_name": preds.system_name,
                "points": [{"threshold": t, "precision_sys": p, "recall_sys": r} for t, p, r in points],
            }
            _write(_report_path(args.out, preds.system_name, ".sweep"), report_json(payload, manifest))
    return EXIT_OK


def cmd_munchkin(args) -> int:
    gold = load_gold(args.gold)
    tuples = munchkin_corpus(gold.sentences, MunchkinConfig(args.max_tuples))
    write_predictions(tuples, args.out)
    if not tuples:
        _err("warning: no sentence has 3 or more tokens, wrote an empty prediction list")
    print(f"{len(tuples)} tuples over {len(gold.sentences)} sentences written to {args.out}")
    return EXIT_OK


def cmd_iaa(args) -> int:
    anns = {"1": load_gold(args.first), "2": load_gold(args.second)}
    pairs = [("1", "2")]
    if args.reference:
        anns["R"] = load_gold(args.reference)
        pairs += [("1", "R"), ("2", "R")]
    base = {s.sentence_id: s.tokens for s in anns["1"].sentences}
    for name, ann in anns.items():
        other = {s.sentence_id: s.tokens for s in ann.sentences}
        if other != base:
            raise _Invalid(f"annotation {name} does not cover the same sentences as annotation 1")
    table = agreement_table(anns, pairs)
    print(table.render())
    if args.out:
        manifest = RunManifest("iaa", [p for p in (args.first, args.second, args.reference) if p])
        payload = {
            "columns": list(table.columns),
            "sentences": [
                {"sentence_id": sid, "tokens": n, "agreement": list(v)}
                for sid, n, v in zip(table.sentence_ids, table.token_counts, table.values)
            ],
            "average": list(table.averages()),
        }
        _write(args.out, report_json(payload, manifest))
    return EXIT_OK


def cmd_stats(args) -> int:
    gold = load_gold(args.gold)
    st = resource_stats(gold)
    print(stats_table(st))
    if args.out:
        _write(args.out, report_json({"stats": st.as_dict()}, RunManifest("stats", [args.gold])))
    return EXIT_OK


def cmd_validate(args) -> int:
    gold = load_gold(args.gold)
    issues = validate_gold(gold)
    for issue in issues:
        print(issue)
    errors = [i for i in issues if i.severity == "error" or args.strict]
    print(f"{len(gold.sentences)} sentences, {len(gold.tuples)} tuples, "
          f"{len(errors)} error(s), {len(issues) - len(errors)} warning(s)")
    return EXIT_INVALID if errors else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="oiescore", description="Token-level Open IE evaluation.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def formats(p):
        p.add_argument("--format", choices=("uniform", "tsv"), default="uniform",
                       help="prediction file format (default: uniform JSON)")

    def strict(p):
        p.add_argument("--strict", action="store_true", help="treat validation warnings as errors")

    p = sub.add_parser("score", help="score prediction files against a gold file")
    p.add_argument("gold")
    p.add_argument("predictions", nargs="+")
    formats(p)
    strict(p)
    p.add_argument("--out", metavar="DIR", help="write one JSON report per system into DIR")
    p.add_argument("--include-inferred-in-exact", action=argparse.BooleanOptionalAction, default=True,
                   help="require gold inferred words for exact matches")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("sweep", help="precision/recall at several confidence thresholds")
    p.add_argument("gold")
    p.add_argument("predictions", nargs="+")
    formats(p)
    strict(p)
    p.add_argument("--thresholds", default="0,0.25,0.5,0.75,1", help="comma separated list")
    p.add_argument("--out", metavar="DIR")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("munchkin", help="write the Munchkin baseline's output for the gold sentences")
    p.add_argument("gold")
    p.add_argument("out")
    p.add_argument("--max-tuples", type=int, default=None, help="per sentence")
    p.set_defaults(func=cmd_munchkin)

    p = sub.add_parser("iaa", help="inter-annotator agreement between two annotation files")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--reference", help="merged reference annotation")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_iaa)

    p = sub.add_parser("stats", help="frequencies of annotation phenomena in a gold file")
    p.add_argument("gold")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("validate", help="check a gold file")
    p.add_argument("gold")
    strict(p)
    p.set_defaults(func=cmd_validate)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "max_tuples", None) is not None and args.max_tuples < 1:
        _err("--max-tuples must be at least 1")
        return EXIT_INVALID
    try:
        return args.func(args)
    except (LoadError, _Invalid) as e:
        _err(str(e))
        return EXIT_INVALID
    except ValueError as e:
        _err(str(e))
        return EXIT_INVALID
    except OSError as e:
        _err(str(e))
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
