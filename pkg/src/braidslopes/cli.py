"""Command-line front end.

Exit codes: 0 when the certificate passes (sink disk free with the expected
carried bound), 1 when any check fails, 2 on input errors (parse failures,
non-knot closures, normalization failure, bad parameters).
"""

from __future__ import annotations

import argparse
import json
import sys

from .braid_core import BraidError, OneBridgeBraid, parse_braid
from .certificate import (
    analyze_1bridge,
    analyze_braid_text,
    certificate,
    to_json,
    to_text,
)
from .oracle import SearchBudgetError, exhaustive_cusp_search
from .report import rows_to_csv, sweep_rows, write_report

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidslopes",
        description=(
            "certify sink-disk-free branched surfaces and carried slope "
            "intervals for positive 3-braid closures and 1-bridge braids"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output_flags(p):
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.add_argument("--out", help="write output to this path instead of stdout")

    p_analyze = sub.add_parser("analyze", help="certify a positive 3-braid closure")
    p_analyze.add_argument("braid", help="braid text, e.g. 'w=3: s1^7 s2^2 s1^2 s2'")
    p_analyze.add_argument(
        "--schema", choices=["auto", "typeA", "typeB", "typeC"], default="auto"
    )
    p_analyze.add_argument(
        "--max-letters", type=int, default=64,
        help="refuse words longer than this (normalization budget guard)",
    )
    add_output_flags(p_analyze)

    p_ob = sub.add_parser("onebridge", help="certify a 1-bridge braid K(w,b,t)")
    p_ob.add_argument("w", type=int)
    p_ob.add_argument("b", type=int)
    p_ob.add_argument("t", type=int)
    add_output_flags(p_ob)

    p_search = sub.add_parser(
        "search", help="exhaustive cusp-assignment search against the schema"
    )
    p_search.add_argument("braid")
    p_search.add_argument("--budget", type=int, default=12)
    add_output_flags(p_search)

    p_svg = sub.add_parser("svg", help="draw the fiber surface and cusped arcs")
    p_svg.add_argument("braid")
    p_svg.add_argument("--out", required=True)

    p_sweep = sub.add_parser("sweep", help="run a parameter grid, emit CSV + figure")
    p_sweep.add_argument("--kind", choices=["3braid", "onebridge"], default="3braid")
    p_sweep.add_argument("--max-letters", type=int, default=12)
    p_sweep.add_argument("--max-strands", type=int, default=9)
    p_sweep.add_argument("--max-twists", type=int, default=4)
    p_sweep.add_argument("--jobs", type=int, default=1)
    p_sweep.add_argument("--out", help="CSV path; a .png overview lands alongside")

    return parser


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _emit_certificate(analysis, args) -> int:
    doc = certificate(analysis)
    _emit(to_json(doc) if args.format == "json" else to_text(doc), args.out)
    return EXIT_PASS if analysis.passes else EXIT_FAIL


def _cmd_analyze(args) -> int:
    word = parse_braid(args.braid)
    if word.letter_count > args.max_letters:
        raise BraidError(
            f"word has {word.letter_count} letters; --max-letters is {args.max_letters}"
        )
    analysis = analyze_braid_text(args.braid, schema=args.schema)
    return _emit_certificate(analysis, args)


def _cmd_onebridge(args) -> int:
    params = OneBridgeBraid(args.w, args.b, args.t)
    analysis = analyze_1bridge(params)
    return _emit_certificate(analysis, args)


def _cmd_search(args) -> int:
    from .braid_core import classify, normalize_3braid, Unknot
    from .branched_surface import schema_cusping

    word = parse_braid(args.braid)
    if word.strand_count != 3:
        raise BraidError("search expects a 3-braid")
    normal = normalize_3braid(word)
    if isinstance(normal, Unknot):
        raise BraidError("the unknot has no assignments to search")
    schema = schema_cusping(classify(normal), normal)
    analysis_word = schema.word
    report = exhaustive_cusp_search(analysis_word, budget=args.budget, schema=schema)
    doc = {
        "input": args.braid,
        "analysis_word": str(report.word),
        "search": {
            "examined": report.examined,
            "sink_disk_free": report.sink_free,
            "best_k": report.best_k,
            "witnesses": list(report.witnesses),
            "schema": report.schema_cusping,
            "schema_k": report.schema_k,
            "schema_is_witness": report.schema_is_witness,
            "counterexamples": list(report.counterexamples),
            "overcautious_rejections": list(report.overcautious),
        },
    }
    if args.format == "json":
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        lines = [
            f"input:            {args.braid}",
            f"analysis word:    {doc['analysis_word']}",
            f"examined:         {report.examined}",
            f"sink disk free:   {report.sink_free}",
            f"best k:           {report.best_k}",
            f"schema k:         {report.schema_k}",
            f"schema witness:   {report.schema_is_witness}",
            f"counterexamples:  {list(report.counterexamples)}",
        ]
        _emit("\n".join(lines) + "\n", args.out)
    ok = report.schema_is_witness and not report.counterexamples
    return EXIT_PASS if ok else EXIT_FAIL


def _match_one_bridge(word) -> OneBridgeBraid | None:
    """Recognize (s_b ... s_1)(s_{w-1} ... s_1)^t expanded words."""
    from .braid_core import braid_of_1bridge

    w = word.strand_count
    n = word.letter_count
    for b in range(1, w - 1):
        remainder = n - b
        if remainder <= 0 or remainder % (w - 1) != 0:
            continue
        t = remainder // (w - 1)
        if t < 1 or w < 4:
            continue
        params = OneBridgeBraid(w, b, t)
        if braid_of_1bridge(params) == word:
            return params
    return None


def _cmd_svg(args) -> int:
    from .diagram import write_svg

    word = parse_braid(args.braid)
    if word.strand_count == 3:
        analysis = analyze_braid_text(args.braid)
    else:
        params = _match_one_bridge(word)
        if params is None:
            raise BraidError(
                "svg supports 3-braids and expanded 1-bridge words; "
                f"got an unrecognized word on {word.strand_count} strands"
            )
        analysis = analyze_1bridge(params)
    write_svg(analysis, args.out)
    return EXIT_PASS if analysis.passes else EXIT_FAIL


def _cmd_sweep(args) -> int:
    rows = sweep_rows(
        args.kind,
        max_letters=args.max_letters,
        max_strands=args.max_strands,
        max_twists=args.max_twists,
        jobs=args.jobs,
    )
    if args.out:
        paths = write_report(rows, args.out)
        sys.stdout.write("\n".join(paths) + "\n")
    else:
        sys.stdout.write(rows_to_csv(rows))
    failures = [r for r in rows if r["verdict"] != "pass"]
    return EXIT_FAIL if failures else EXIT_PASS


_COMMANDS = {
    "analyze": _cmd_analyze,
    "onebridge": _cmd_onebridge,
    "search": _cmd_search,
    "svg": _cmd_svg,
    "sweep": _cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (BraidError, SearchBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
