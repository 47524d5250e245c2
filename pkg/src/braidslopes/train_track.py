"""Boundary train track: maximal endpoints, linked arcs, carried slopes.

Each co-oriented product disk meets the boundary torus in two arcs, one per
endpoint of its co-core arc; each arc runs forward along the knot from the
co-core endpoint to the matching endpoint of the image arc.  The endpoint
whose cusp opposes the longitude contributes maximally: the upper endpoint
of a left-cusped arc, the lower endpoint of a right-cusped one.  Two arcs
are linked when their maximal sectors interleave around the knot, and the
track carries every slope below the maximum number of pairwise unlinked
maximal arcs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braid_core import BraidError, OneBridgeBraid
from .branched_surface import LEFT, CuspedArc
from .surface_model import ChordLayout, ProductDiskArc, _interleaves


@dataclass(frozen=True)
class BoundarySector:
    """The maximal boundary sector of one cusped product disk."""

    letter: int
    start: int  # knot position of the maximal co-core endpoint
    end: int  # knot position of its image endpoint
    maximal: bool = True


@dataclass(frozen=True)
class SlopeInterval:
    """The carried interval (-inf, upper_bound), open on the right."""

    upper_bound: int

    def __str__(self):
        return f"(-inf, {self.upper_bound})"


class DegenerateTrackError(BraidError):
    """No cusped arcs: the track is the bare longitude."""


def maximal_endpoints(
    cusped_arcs: list[CuspedArc],
    disks: list[ProductDiskArc],
    layout: ChordLayout,
) -> list[BoundarySector]:
    """One maximal sector per cusped arc."""
    by_letter = {d.letter: d for d in disks}
    sectors = []
    for cusp in cusped_arcs:
        disk = by_letter[cusp.letter]
        if disk.plus_arc is None:
            raise BraidError(f"disk {disk.name} is not standardized")
        if cusp.direction == LEFT:
            start = layout.knot_pos[disk.minus_arc.head]
            end = layout.knot_pos[disk.plus_arc.head]
        else:
            start = layout.knot_pos[disk.minus_arc.tail]
            end = layout.knot_pos[disk.plus_arc.tail]
        sectors.append(BoundarySector(cusp.letter, start, end))
    return sectors


def linked_pairs(
    sectors: list[BoundarySector], circle_size: int
) -> list[tuple[int, int]]:
    """Pairs of arcs whose maximal sectors interleave on the knot."""
    pairs = []
    for i in range(len(sectors)):
        for j in range(i + 1, len(sectors)):
            s, t = sectors[i], sectors[j]
            if _interleaves(s.start, s.end, t.start, t.end, circle_size):
                pairs.append(tuple(sorted((s.letter, t.letter))))
    return sorted(pairs)


def max_unlinked(
    sectors: list[BoundarySector], pairs: list[tuple[int, int]]
) -> int:
    """Exact maximum set of pairwise unlinked arcs (branch and bound)."""
    letters = sorted(s.letter for s in sectors)
    adjacency = {letter: set() for letter in letters}
    for a, b in pairs:
        adjacency[a].add(b)
        adjacency[b].add(a)
    order = sorted(letters, key=lambda v: -len(adjacency[v]))
    best = 0

    def grow(idx: int, chosen: set[int]):
        nonlocal best
        if len(chosen) + (len(order) - idx) <= best:
            return
        if idx == len(order):
            best = max(best, len(chosen))
            return
        vertex = order[idx]
        if not (adjacency[vertex] & chosen):
            chosen.add(vertex)
            grow(idx + 1, chosen)
            chosen.remove(vertex)
        grow(idx + 1, chosen)

    grow(0, set())
    return best


def slope_interval(
    sectors: list[BoundarySector], unlinked_count: int
) -> SlopeInterval:
    """Carried interval (-inf, k); undefined without a cusped arc."""
    if not sectors:
        raise DegenerateTrackError(
            "no cusped arcs: the slope interval is undefined"
        )
    return SlopeInterval(unlinked_count)


def gamma_count(params: OneBridgeBraid) -> int:
    """Number of product disks in the 1-bridge construction, by parity.

    Equals the count of odd-generator letters outside the last horizontal
    slice: odd generators below the bridge width appear t times there, the
    rest t-1 times.
    """
    w, b, t = params.w, params.b, params.t
    if w % 2 == 0 and b % 2 == 0:
        return ((t - 1) * w + b) // 2
    if w % 2 == 0:
        return ((t - 1) * w + b + 1) // 2
    if b % 2 == 0:
        return ((w - 1) * (t - 1) + b) // 2
    return ((w - 1) * (t - 1) + b + 1) // 2
