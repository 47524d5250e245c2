"""SVG diagrams of the fiber surface and its cusped arcs.

Deterministic SVG 1.1 with integer coordinates: Seifert disks as vertical
rectangles, bands as horizontal bars at their letter heights, co-core arcs
dashed (drawn on the negative side), image arcs solid, cusp directions as
small triangles at the co-core arc heads, maximal endpoints as filled dots.
"""

from __future__ import annotations

from .certificate import Analysis

DISK_GAP = 150
DISK_WIDTH = 40
ROW_HEIGHT = 34
MARGIN_X = 70
MARGIN_Y = 56
MINUS_COLOR = "#3355cc"
PLUS_COLOR = "#cc2277"
DISK_FILL = "#f2f2f2"
BAND_FILL = "#d9d9d9"


def _disk_x(disk: int) -> int:
    return MARGIN_X + (disk - 1) * DISK_GAP


def _row_y(letter: int) -> int:
    return MARGIN_Y + (letter - 1) * ROW_HEIGHT


def render_svg(analysis: Analysis) -> str:
    """Render the analyzed surface; arcs appear only when a schema ran."""
    run = analysis.run
    word = analysis.analysis_word if analysis.analysis_word else analysis.input_word
    strands = word.strand_count
    letters = word.letters
    height = _row_y(len(letters)) + MARGIN_Y
    width = _disk_x(strands) + DISK_WIDTH + MARGIN_X

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for disk in range(1, strands + 1):
        x = _disk_x(disk)
        parts.append(
            f'<rect x="{x}" y="{MARGIN_Y - 26}" width="{DISK_WIDTH}" '
            f'height="{height - 2 * (MARGIN_Y - 26)}" fill="{DISK_FILL}" '
            'stroke="black"/>'
        )
        parts.append(
            f'<text x="{x + DISK_WIDTH // 2}" y="{MARGIN_Y - 32}" '
            f'font-size="14" text-anchor="middle">S{disk}</text>'
        )
    for j, gen in enumerate(letters, start=1):
        x0 = _disk_x(gen) + DISK_WIDTH
        x1 = _disk_x(gen + 1)
        y = _row_y(j)
        parts.append(
            f'<rect x="{x0}" y="{y - 6}" width="{x1 - x0}" height="12" '
            f'fill="{BAND_FILL}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{(x0 + x1) // 2}" y="{y - 9}" font-size="10" '
            f'text-anchor="middle">b{j}</text>'
        )

    if run is not None:
        cusped = {c.letter: c for c in run.cusped}
        maximal = {
            (s.letter, "head" if cusped[s.letter].direction == "L" else "tail")
            for s in run.boundary_sectors
        }
        for disk in run.selected:
            cusp = cusped.get(disk.letter)
            if cusp is None:
                continue
            parts.extend(_arc_paths(disk, cusp, maximal))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _arc_paths(disk, cusp, maximal) -> list[str]:
    j, k, line = disk.letter, disk.partner, disk.family
    out = []
    # Co-core arc: on the left disk, hugging its right edge.
    x = _disk_x(line) + DISK_WIDTH
    top, bottom = _row_y(j) - 10, _row_y(k) - 10
    bow = x - 26
    out.append(
        f'<path d="M {x} {top} C {bow} {top}, {bow} {bottom}, {x} {bottom}" '
        f'fill="none" stroke="{MINUS_COLOR}" stroke-width="2" '
        'stroke-dasharray="5,3"/>'
    )
    # Image arc: on the right disk, hugging its left edge.
    xp = _disk_x(line + 1)
    ptop, pbottom = _row_y(j) + 10, _row_y(k) + 10
    pbow = xp + 26
    out.append(
        f'<path d="M {xp} {ptop} C {pbow} {ptop}, {pbow} {pbottom}, {xp} {pbottom}" '
        f'fill="none" stroke="{PLUS_COLOR}" stroke-width="2"/>'
    )
    # Cusp direction at the co-core head: a triangle pointing left or right.
    ax, ay = x - 8, top
    if cusp.direction == "L":
        points = f"{ax + 6},{ay - 4} {ax + 6},{ay + 4} {ax - 4},{ay}"
    else:
        points = f"{ax - 6},{ay - 4} {ax - 6},{ay + 4} {ax + 4},{ay}"
    out.append(f'<polygon points="{points}" fill="{MINUS_COLOR}"/>')
    # Maximal endpoint: bold dot at head (left cusp) or tail (right cusp).
    my = top if (j, "head") in maximal else bottom
    if (j, "head") in maximal or (j, "tail") in maximal:
        out.append(f'<circle cx="{x}" cy="{my}" r="4" fill="{MINUS_COLOR}"/>')
    return out


def write_svg(analysis: Analysis, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(render_svg(analysis))
