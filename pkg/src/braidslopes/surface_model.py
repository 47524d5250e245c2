"""Combinatorial model of the Bennequin fiber surface of a positive braid closure.

The surface is stored as pure station combinatorics, never as geometry:

- Disk ``p``'s boundary circle carries the attachment stations of every band
  touching strand position ``p`` (letters of generator ``p-1`` or ``p``),
  ordered by letter index; the closure arc fills the remaining stretch.
- The knot traverses disk-edge segments and band-edge segments.  Leaving disk
  ``p`` at station ``j`` re-enters the partner disk just below station ``j``,
  which reproduces the strand walk of the closed braid; the boundary closes
  into one circle exactly when the closure is a knot.
- A product disk spanning bands ``j < k`` of generator ``i`` is recorded by
  two chords: the co-core chord of band ``j`` on disk ``i`` (endpoints just
  above stations ``j`` and ``k``, the lower one displaced past any
  intervening attachments) and, after standardization, its image chord on
  disk ``i+1`` (endpoints just below stations ``j`` and ``k``).
- Two chords of a disk cross exactly when their endpoints interleave around
  its boundary circle.  Endpoints sharing a gap between stations are ordered
  by the position of their partner endpoint, which keeps every avoidable
  crossing avoided (arcs stay in minimal position).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .braid_core import BraidWord, NotAKnotError


@dataclass(frozen=True, order=True)
class ArcId:
    """Name of a product-disk boundary arc: letter index plus side."""

    letter: int
    sign: str  # "-" for the co-core arc, "+" for its monodromy image

    def __str__(self):
        return f"a{self.letter}{self.sign}"


@dataclass(frozen=True)
class Endpoint:
    """A chord endpoint, anchored just above or below a station."""

    arc: ArcId
    line: int
    anchor: int
    above: bool
    is_tail: bool


@dataclass(frozen=True)
class Chord:
    arc: ArcId
    line: int
    head: Endpoint
    tail: Endpoint


@dataclass(frozen=True)
class ProductDiskArc:
    """A product disk, identified by its two boundary arcs.

    ``letter`` owns the disk; ``partner`` is the next band of the same type.
    ``plus_arc`` is None until the disk has been standardized.
    """

    letter: int
    partner: int
    family: int
    minus_arc: Chord
    plus_arc: Chord | None

    @property
    def name(self) -> str:
        return f"D{self.letter}"


@dataclass(frozen=True)
class IntersectionCensus:
    type1_count: int
    type2_count: int
    type2_pairs: tuple[tuple[int, int], ...]  # (plus-arc letter, minus-arc letter)


class FiberSurface:
    """Seifert disks and ordered bands of a positive braid closure."""

    def __init__(self, braid: BraidWord):
        components = _component_count(braid)
        if components != 1:
            raise NotAKnotError(components)
        self.braid = braid
        self.disk_count = braid.strand_count
        self.bands = tuple((j + 1, letter) for j, letter in enumerate(braid.letters))
        self.stations: dict[int, tuple[int, ...]] = {
            line: tuple(
                j + 1
                for j, letter in enumerate(braid.letters)
                if letter in (line - 1, line)
            )
            for line in range(1, braid.strand_count + 1)
        }
        self.piece_order = _knot_cycle(self.stations, braid)
        self.boundary_order = self._boundary_items()

    @property
    def band_count(self) -> int:
        return len(self.bands)

    def band_family(self, letter: int) -> int:
        return self.braid.letters[letter - 1]

    def band_lines(self, letter: int) -> tuple[int, int]:
        family = self.band_family(letter)
        return family, family + 1

    def _boundary_items(self) -> tuple[tuple, ...]:
        items: list[tuple] = []
        for line, gap in self.piece_order:
            items.append(("disk", line, gap))
            stations = self.stations[line]
            exit_station = stations[(gap + 1) % len(stations)]
            items.append(("band", exit_station, line))
        return tuple(items)

    def next_same_family(self, letter: int) -> int | None:
        family = self.band_family(letter)
        for j in range(letter + 1, self.band_count + 1):
            if self.band_family(j) == family:
                return j
        return None


def _component_count(braid: BraidWord) -> int:
    """Boundary circles of the fiber surface, via the piece successor walk."""
    stations = {
        line: [
            j + 1
            for j, letter in enumerate(braid.letters)
            if letter in (line - 1, line)
        ]
        for line in range(1, braid.strand_count + 1)
    }
    count = sum(1 for line in stations if not stations[line])
    pieces = {(line, g) for line in stations for g in range(len(stations[line]))}
    seen: set[tuple[int, int]] = set()
    for start in pieces:
        if start in seen:
            continue
        count += 1
        cur = start
        while cur not in seen:
            seen.add(cur)
            cur = _piece_successor(stations, braid, cur)
    return count


def _piece_successor(stations, braid: BraidWord, piece: tuple[int, int]) -> tuple[int, int]:
    line, gap = piece
    line_stations = stations[line]
    exit_station = line_stations[(gap + 1) % len(line_stations)]
    family = braid.letters[exit_station - 1]
    other = family + 1 if line == family else family
    return other, list(stations[other]).index(exit_station)


def _knot_cycle(stations, braid: BraidWord) -> tuple[tuple[int, int], ...]:
    """The single boundary circle as an ordered list of (line, gap) pieces."""
    start = (1, len(stations[1]) - 1)
    order = [start]
    cur = _piece_successor(stations, braid, start)
    while cur != start:
        order.append(cur)
        cur = _piece_successor(stations, braid, cur)
    return tuple(order)


def build_fiber_surface(braid: BraidWord) -> FiberSurface:
    """Seifert's algorithm, combinatorially: one disk per strand, one band per letter."""
    return FiberSurface(braid)


def product_disks(surface: FiberSurface) -> list[ProductDiskArc]:
    """All product disks: one per band with a later band of the same type."""
    disks = []
    for letter in range(1, surface.band_count + 1):
        partner = surface.next_same_family(letter)
        if partner is None:
            continue
        family = surface.band_family(letter)
        arc = ArcId(letter, "-")
        minus = Chord(
            arc,
            family,
            Endpoint(arc, family, letter, True, False),
            Endpoint(arc, family, partner, True, True),
        )
        disks.append(ProductDiskArc(letter, partner, family, minus, None))
    return disks


def standardize(
    surface: FiberSurface, disks: list[ProductDiskArc]
) -> tuple[list[ProductDiskArc], list[str]]:
    """Push every image arc into a single Seifert disk.

    The bottom-to-top scan isotopes the arc through the lowest untouched band
    first, so the recorded order sorts the disks by partner band descending.
    Co-core arcs are never moved.
    """
    order = sorted(disks, key=lambda d: d.partner, reverse=True)
    isotopy_order = [f"a{d.letter}+" for d in order]
    standardized = []
    for disk in disks:
        line = disk.family + 1
        arc = ArcId(disk.letter, "+")
        plus = Chord(
            arc,
            line,
            Endpoint(arc, line, disk.letter, False, False),
            Endpoint(arc, line, disk.partner, False, True),
        )
        standardized.append(
            ProductDiskArc(disk.letter, disk.partner, disk.family, disk.minus_arc, plus)
        )
    return standardized, isotopy_order


# ---------------------------------------------------------------------------
# Circle coordinates

class ChordLayout:
    """Circle coordinates for the chords of a selection of product disks.

    Positions are computed per disk boundary (for crossings and faces) and
    along the knot (for linking).  Both orders list, inside each gap between
    consecutive stations, the endpoints sorted by decreasing forward distance
    to their partner endpoint; parallel ties nest by arc name.
    """

    def __init__(self, surface: FiberSurface, disks: list[ProductDiskArc]):
        self.surface = surface
        self.disks = disks
        self.chords: dict[int, list[Chord]] = {line: [] for line in surface.stations}
        for disk in disks:
            if disk.plus_arc is None:
                raise ValueError(f"disk {disk.name} is not standardized")
            self.chords[disk.minus_arc.line].append(disk.minus_arc)
            self.chords[disk.plus_arc.line].append(disk.plus_arc)
        self._gap_slots: dict[tuple[int, int], list[Endpoint]] = {}
        for line, chords in self.chords.items():
            self._sort_line_gaps(line, chords)
        self.line_items: dict[int, list[tuple]] = {}
        self.line_pos: dict[int, dict] = {}
        for line in surface.stations:
            self._index_line(line)
        self.knot_pos: dict[Endpoint, int] = {}
        self.knot_size = 0
        self._index_knot()

    # -- per-line circle -------------------------------------------------

    def _gap_of(self, endpoint: Endpoint) -> int:
        stations = self.surface.stations[endpoint.line]
        idx = stations.index(endpoint.anchor)
        return idx if not endpoint.above else (idx - 1) % len(stations)

    def _sort_line_gaps(self, line: int, chords: list[Chord]):
        stations = self.surface.stations[line]
        m = len(stations)
        gaps: dict[int, list[Endpoint]] = {}
        partner = {}
        for chord in chords:
            partner[chord.head] = chord.tail
            partner[chord.tail] = chord.head
            for end in (chord.head, chord.tail):
                gaps.setdefault(self._gap_of(end), []).append(end)

        def key(end: Endpoint):
            g = self._gap_of(end)
            theta = (self._gap_of(partner[end]) - g) % m
            if end.is_tail:
                return (-theta, 0, -end.arc.letter, end.arc.sign)
            return (-theta, 1, end.arc.letter, end.arc.sign)

        for g, slots in gaps.items():
            slots.sort(key=key)
            self._gap_slots[(line, g)] = slots

    def _index_line(self, line: int):
        stations = self.surface.stations[line]
        items: list[tuple] = []
        for g, station in enumerate(stations):
            items.append(("station", station))
            slots = self._gap_slots.get((line, g), [])
            if g == len(stations) - 1:
                below = [e for e in slots if not e.above]
                above = [e for e in slots if e.above]
                if below + above != slots:
                    raise AssertionError("closure marker would split an arc cluster")
                items.extend(("end", e) for e in below)
                items.append(("closure", line))
                items.extend(("end", e) for e in above)
            else:
                items.extend(("end", e) for e in slots)
        self.line_items[line] = items
        self.line_pos[line] = {item: i for i, item in enumerate(items)}

    def line_position(self, endpoint: Endpoint) -> int:
        return self.line_pos[endpoint.line][("end", endpoint)]

    # -- knot circle -------------------------------------------------------

    def _index_knot(self):
        counter = 0
        for line, gap in self.surface.piece_order:
            for end in self._gap_slots.get((line, gap), []):
                self.knot_pos[end] = counter
                counter += 1
        self.knot_size = max(counter, 1)

    # -- crossings ----------------------------------------------------------

    def crossings(self) -> list[tuple[Chord, Chord]]:
        """Forced crossing pairs, per disk, as (plus chord, minus chord)."""
        found = []
        for line, chords in self.chords.items():
            n = len(self.line_items[line])
            for c1, c2 in combinations(chords, 2):
                a1 = self.line_pos[line][("end", c1.head)]
                a2 = self.line_pos[line][("end", c1.tail)]
                b1 = self.line_pos[line][("end", c2.head)]
                b2 = self.line_pos[line][("end", c2.tail)]
                if _interleaves(a1, a2, b1, b2, n):
                    if c1.arc.sign == c2.arc.sign:
                        raise AssertionError(
                            f"same-side arcs {c1.arc} and {c2.arc} forced to cross"
                        )
                    plus, minus = (c1, c2) if c1.arc.sign == "+" else (c2, c1)
                    found.append((plus, minus))
        found.sort(key=lambda pair: (pair[0].arc.letter, pair[1].arc.letter))
        return found

    def faces(self, line: int) -> list["Face"]:
        return _line_faces(self, line)


def _interleaves(a1: int, a2: int, b1: int, b2: int, n: int) -> bool:
    """Do chords (a1,a2) and (b1,b2) with distinct endpoints interleave on Z/n?"""

    def inside(x, s, e):
        return 0 < (x - s) % n < (e - s) % n

    return inside(b1, a1, a2) != inside(b2, a1, a2)


# ---------------------------------------------------------------------------
# Faces of the chord arrangement on one disk

@dataclass(frozen=True)
class Face:
    line: int
    stations: frozenset[int]
    principal: bool
    chord_sides: frozenset[tuple[ArcId, str]]  # side: "main" (left) or "hug" (right)
    gap_marks: tuple[int, ...]  # circle positions of boundary stretches on the face
    crossing_arcs: frozenset[frozenset[ArcId]]


def _line_faces(layout: ChordLayout, line: int) -> list[Face]:
    """Faces of the disk cut along its chords, traced with interior on the left.

    The boundary circle runs counterclockwise, so the hugged stations of a
    chord lie to the right of its head-to-tail direction.
    """
    items = layout.line_items[line]
    pos = layout.line_pos[line]
    n = len(items)
    chords = layout.chords[line]
    if n == 0:
        return []

    crossings: dict[frozenset[ArcId], tuple] = {}
    per_chord: dict[ArcId, list[tuple]] = {c.arc: [] for c in chords}
    chord_by_arc = {c.arc: c for c in chords}
    for c1, c2 in combinations(chords, 2):
        a1, a2 = pos[("end", c1.head)], pos[("end", c1.tail)]
        b1, b2 = pos[("end", c2.head)], pos[("end", c2.tail)]
        if _interleaves(a1, a2, b1, b2, n):
            node = ("cross", frozenset((c1.arc, c2.arc)))
            crossings[frozenset((c1.arc, c2.arc))] = node
            per_chord[c1.arc].append(node)
            per_chord[c2.arc].append(node)

    def forward_offset(chord: Chord, node) -> int:
        # Order of crossings along a chord: by the position, inside the
        # chord's forward arc, of the other chord's endpoint lying there.
        other_arc = next(a for a in node[1] if a != chord.arc)
        other = chord_by_arc[other_arc]
        start = pos[("end", chord.head)]
        span = (pos[("end", chord.tail)] - start) % n
        for end in (other.head, other.tail):
            off = (pos[("end", end)] - start) % n
            if 0 < off < span:
                return off
        raise AssertionError("crossing chord has no endpoint in the forward arc")

    # Directed half-edges: ("b", i) boundary items[i] -> items[i+1]; ("B", i)
    # its reverse; chord segments ("c", arc, seg, +1/-1).
    out_edges: dict[tuple, list] = {}
    twin: dict[tuple, tuple] = {}
    head_of: dict[tuple, tuple] = {}

    def add_edge(u, v, fwd, bwd):
        twin[fwd] = bwd
        twin[bwd] = fwd
        head_of[fwd] = v
        head_of[bwd] = u

    for i in range(n):
        u = items[i]
        v = items[(i + 1) % n]
        add_edge(u, v, ("b", i), ("B", i))

    chord_nodes: dict[ArcId, list] = {}
    for chord in chords:
        seq = [("end", chord.head)]
        seq += sorted(per_chord[chord.arc], key=lambda nd: forward_offset(chord, nd))
        seq.append(("end", chord.tail))
        chord_nodes[chord.arc] = seq
        for s in range(len(seq) - 1):
            add_edge(seq[s], seq[s + 1], ("c", chord.arc, s, 1), ("c", chord.arc, s, -1))

    # Rotations: counterclockwise cyclic order of outgoing half-edges.
    rotations: dict[tuple, list] = {}
    for i, item in enumerate(items):
        to_next = ("b", i)
        to_prev = ("B", (i - 1) % n)
        if item[0] == "end":
            endpoint = item[1]
            chord = chord_by_arc[endpoint.arc]
            seq = chord_nodes[endpoint.arc]
            if not endpoint.is_tail:
                inward = ("c", endpoint.arc, 0, 1)
            else:
                inward = ("c", endpoint.arc, len(seq) - 2, -1)
            rotations[item] = [to_next, inward, to_prev]
        else:
            rotations[item] = [to_next, to_prev]
    for pair, node in crossings.items():
        arc_a, arc_b = sorted(pair)
        chord_a, chord_b = chord_by_arc[arc_a], chord_by_arc[arc_b]
        ia = chord_nodes[arc_a].index(node)
        ib = chord_nodes[arc_b].index(node)
        a_fwd = ("c", arc_a, ia, 1)
        a_bwd = ("c", arc_a, ia - 1, -1)
        b_fwd = ("c", arc_b, ib, 1)
        b_bwd = ("c", arc_b, ib - 1, -1)
        start_a = pos[("end", chord_a.head)]
        span_a = (pos[("end", chord_a.tail)] - start_a) % n
        b_head_inside = 0 < (pos[("end", chord_b.head)] - start_a) % n < span_a
        if b_head_inside:
            rotations[node] = [a_fwd, b_fwd, a_bwd, b_bwd]
        else:
            rotations[node] = [a_fwd, b_bwd, a_bwd, b_fwd]

    for node, rot in rotations.items():
        for he in rot:
            out_edges.setdefault(node, []).append(he)

    def next_half_edge(he):
        v = head_of[he]
        rot = rotations[v]
        idx = rot.index(twin[he])
        return rot[(idx - 1) % len(rot)]

    faces: list[Face] = []
    visited: set[tuple] = set()
    all_edges = list(twin.keys())
    for start in all_edges:
        if start in visited:
            continue
        cycle = []
        he = start
        while he not in visited:
            visited.add(he)
            cycle.append(he)
            he = next_half_edge(he)
        if any(h[0] == "B" for h in cycle):
            continue  # outer face
        stations: set[int] = set()
        sides: set[tuple[ArcId, str]] = set()
        marks: list[int] = []
        principal = False
        cross_pairs: set[frozenset[ArcId]] = set()
        for h in cycle:
            if h[0] == "b":
                idx = h[1]
                marks.append(idx)
                for node in (items[idx], items[(idx + 1) % n]):
                    if node[0] == "station":
                        stations.add(node[1])
                    elif node[0] == "closure":
                        principal = True
            else:
                _, arc, _, direction = h
                sides.add((arc, "main" if direction == 1 else "hug"))
                tail_node = head_of[twin[h]]
                for node in (tail_node, head_of[h]):
                    if node[0] == "cross":
                        cross_pairs.add(node[1])
        faces.append(
            Face(
                line,
                frozenset(stations),
                principal,
                frozenset(sides),
                tuple(sorted(marks)),
                frozenset(cross_pairs),
            )
        )
    expected = 1 + len(chords) + len(crossings)
    if len(faces) != expected:
        raise AssertionError(
            f"disk {line}: traced {len(faces)} faces, expected {expected}"
        )
    return faces


# ---------------------------------------------------------------------------
# Intersection census

def intersection_census(
    surface: FiberSurface,
    disks: list[ProductDiskArc],
    stage: str,
) -> IntersectionCensus:
    """Count triple points of the spine at the requested stage.

    Before standardization each image arc still runs through the partner band
    of its disk, crossing the co-core arc of the next chosen disk in the same
    family once; standardization removes exactly these crossings and never
    touches the co-core arcs, so crossings between standardized chords are
    common to both stages.
    """
    if stage not in ("pre", "post"):
        raise ValueError(f"stage must be 'pre' or 'post', got {stage!r}")
    if stage == "pre" and any(d.plus_arc is not None for d in disks):
        raise ValueError("pre-standardization census expects unstandardized disks")
    standardized = disks if stage == "post" else standardize(surface, disks)[0]
    layout = ChordLayout(surface, standardized)
    pairs = tuple(
        (plus.arc.letter, minus.arc.letter) for plus, minus in layout.crossings()
    )
    type1 = 0
    if stage == "pre":
        chosen = {d.letter for d in disks}
        type1 = sum(1 for d in disks if d.partner in chosen)
    return IntersectionCensus(type1, len(pairs), pairs)
