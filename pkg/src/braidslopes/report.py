"""Sweep reports: delimited rows plus an overview figure.

A sweep runs the full pipeline over a parameter grid and emits one CSV row
per case; when writing to a file it also renders a matplotlib overview
(carried bound against letter count, pass/fail colored) next to the CSV.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Iterator

from .braid_core import (
    Blocks,
    OneBridgeBraid,
    braid_of_1bridge,
    closure_component_count,
)
from .certificate import Analysis, analyze_1bridge, analyze_3braid

CSV_FIELDS = [
    "input",
    "kind",
    "class",
    "letters",
    "genus",
    "cusped",
    "sink_disk_free",
    "linked_pairs",
    "max_unlinked",
    "expected_bound",
    "verdict",
]


def block_sequences(max_total: int) -> Iterator[Blocks]:
    """All block sequences with letter total <= max_total and knot closure."""

    def extend(pairs: tuple[tuple[int, int], ...], remaining: int):
        if pairs:
            word = Blocks(pairs).word()
            if closure_component_count(word) == 1:
                yield Blocks(pairs)
        for a in range(2, remaining - 1 + 1):
            for b in range(1, remaining - a + 1):
                yield from extend(pairs + ((a, b),), remaining - a - b)

    yield from extend((), max_total)


def one_bridge_grid(
    max_strands: int, max_twists: int
) -> Iterator[OneBridgeBraid]:
    """All valid 1-bridge parameters with knot closure in the grid."""
    for w in range(4, max_strands + 1):
        for b in range(1, w - 1):
            for t in range(1, max_twists + 1):
                params = OneBridgeBraid(w, b, t)
                if closure_component_count(braid_of_1bridge(params)) == 1:
                    yield params


def _row(analysis: Analysis) -> dict:
    run = analysis.run
    return {
        "input": analysis.input_text,
        "kind": analysis.kind,
        "class": analysis.braid_class.value if analysis.braid_class else "one_bridge",
        "letters": analysis.analysis_word.letter_count if analysis.analysis_word else 0,
        "genus": analysis.genus.genus,
        "cusped": run.assignment.cusped_count if run else 0,
        "sink_disk_free": run.sink.sink_disk_free if run else True,
        "linked_pairs": len(run.linked) if run else 0,
        "max_unlinked": run.unlinked_max if run else 0,
        "expected_bound": analysis.expected_bound,
        "verdict": "pass" if analysis.passes else "fail",
    }


def _analyze_blocks(blocks: Blocks) -> dict:
    return _row(analyze_3braid(blocks.word()))


def _analyze_params(params: OneBridgeBraid) -> dict:
    return _row(analyze_1bridge(params))


def sweep_rows(
    kind: str,
    max_letters: int = 12,
    max_strands: int = 9,
    max_twists: int = 4,
    jobs: int = 1,
) -> list[dict]:
    """Analyze a whole grid; rows come back in enumeration order."""
    if kind == "3braid":
        cases = list(block_sequences(max_letters))
        worker = _analyze_blocks
    elif kind == "onebridge":
        cases = list(one_bridge_grid(max_strands, max_twists))
        worker = _analyze_params
    else:
        raise ValueError(f"unknown sweep kind {kind!r}")
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(worker, cases))
    return [worker(case) for case in cases]


def rows_to_csv(rows: list[dict]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def write_report(rows: list[dict], out_path: str) -> list[str]:
    """Write the CSV and render the overview figure alongside it."""
    path = Path(out_path)
    path.write_text(rows_to_csv(rows), encoding="utf-8")
    figure_path = path.with_suffix(".png")
    _render_overview(rows, figure_path)
    return [str(path), str(figure_path)]


def _render_overview(rows: list[dict], figure_path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for verdict, color, marker in (("pass", "#2266aa", "o"), ("fail", "#cc3322", "x")):
        xs = [r["letters"] for r in rows if r["verdict"] == verdict]
        ys = [r["max_unlinked"] for r in rows if r["verdict"] == verdict]
        if xs:
            ax.scatter(xs, ys, c=color, marker=marker, label=verdict, alpha=0.75)
    ax.set_xlabel("letters in analyzed word")
    ax.set_ylabel("carried slope bound k")
    ax.set_title("sweep: carried bounds")
    ax.legend(loc="upper left")
    fig.tight_layout()
    fig.savefig(figure_path, dpi=120)
    plt.close(fig)
