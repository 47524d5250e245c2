"""Cusping schemas, branch sectors, sink-disk detection, switch relations.

A branched surface is determined by a cusp assignment: one of left (``L``),
right (``R``), or uncusped (``U``) per letter.  A cusped letter selects its
product disk and co-orients it; the two boundary arcs of a disk always carry
opposite co-orientation pairings.

Orientation convention, fixed once and calibrated against every per-sector
outcome stated for the worked pretzel example and the band lemmas: viewing
the positive side of the fiber, an arc whose pairing is +1 has its branch
direction on the main side of its chord, and pairing -1 points into the
hugged side (the side containing the band attachments the chord runs past).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .braid_core import (
    Blocks,
    BraidClass,
    BraidError,
    BraidWord,
    NormalizedThreeBraid,
    OneBridgeBraid,
    ReducedTorus,
    braid_of_1bridge,
    schema_block_rotation,
)
from .surface_model import ArcId, FiberSurface, ProductDiskArc

LEFT = "L"
RIGHT = "R"
UNCUSPED = "U"

_COMPACT = {LEFT: "<", RIGHT: ">", UNCUSPED: "."}
_ARROWS = {LEFT: "(<-)", RIGHT: "(->)", UNCUSPED: "(  )"}


@dataclass(frozen=True)
class CuspAssignment:
    """Per-letter cusp choice for a braid word."""

    word: BraidWord
    entries: tuple[str, ...]

    def __post_init__(self):
        if len(self.entries) != self.word.letter_count:
            raise BraidError("assignment length disagrees with word length")
        for e in self.entries:
            if e not in (LEFT, RIGHT, UNCUSPED):
                raise BraidError(f"invalid cusp entry {e!r}")

    @property
    def cusped_letters(self) -> tuple[int, ...]:
        return tuple(j + 1 for j, e in enumerate(self.entries) if e != UNCUSPED)

    @property
    def cusped_count(self) -> int:
        return len(self.cusped_letters)

    def compact(self) -> str:
        return "".join(_COMPACT[e] for e in self.entries)

    def arrows(self) -> str:
        return "".join(_ARROWS[e] for e in self.entries)


@dataclass(frozen=True)
class CuspedArc:
    """Cusp data of one selected product disk."""

    letter: int
    direction: str  # LEFT or RIGHT
    minus_pairing: int
    plus_pairing: int

    def __post_init__(self):
        if self.minus_pairing * self.plus_pairing != -1:
            raise BraidError("arc pairings must have opposite signs")


def propagate_cusps(
    assignment: CuspAssignment, disks: list[ProductDiskArc]
) -> list[CuspedArc]:
    """Turn letter cusps into arc pairings.

    Left means the co-core arc pairs +1 with its cusp direction and the image
    arc pairs -1; right is the reverse.  A cusped letter must own a disk.
    """
    available = {d.letter for d in disks}
    arcs = []
    for j, entry in enumerate(assignment.entries, start=1):
        if entry == UNCUSPED:
            continue
        if j not in available:
            raise BraidError(f"letter {j} is cusped but has no product disk")
        minus = 1 if entry == LEFT else -1
        arcs.append(CuspedArc(j, entry, minus, -minus))
    return arcs


# ---------------------------------------------------------------------------
# Cusping schemas

def schema_cusping(
    braid_class: BraidClass, normal: NormalizedThreeBraid
) -> CuspAssignment:
    """The published cusping pattern for each 3-braid class.

    For a two-block word the pattern is applied after the rotation from
    ``schema_block_rotation``; the returned assignment carries the word it
    applies to (the destabilized torus word for the reduced classes).
    """
    if braid_class is BraidClass.UNKNOT:
        raise BraidError("the unknot has no branched-surface schema")
    if braid_class is BraidClass.REDUCED_TORUS:
        assert isinstance(normal, ReducedTorus)
        n = normal.n
        entries = [RIGHT] * (n - 2) + [LEFT, UNCUSPED]
        return CuspAssignment(normal.word(), tuple(entries))
    assert isinstance(normal, Blocks)
    pairs = normal.pairs
    if braid_class is BraidClass.TYPE_A:
        (a, b), = pairs
        entries = (
            [RIGHT] * (a - 1) + [UNCUSPED] + [RIGHT] * (b - 2) + [LEFT, UNCUSPED]
        )
        return CuspAssignment(normal.word(), tuple(entries))
    if braid_class is BraidClass.TYPE_B:
        (a1, _), (a2, _) = pairs
        entries = [LEFT] * a1 + [LEFT] + [RIGHT] * (a2 - 1) + [UNCUSPED, UNCUSPED]
        return CuspAssignment(normal.word(), tuple(entries))
    rotated = normal.rotated(schema_block_rotation(normal))
    entries = []
    for i, (a, b) in enumerate(rotated.pairs):
        last = i == len(rotated.pairs) - 1
        if i == 0:
            entries += [LEFT] * a + [RIGHT] + [LEFT] * (b - 1)
        elif last:
            entries += [RIGHT] * (a - 1) + [UNCUSPED] + [LEFT] * (b - 1) + [UNCUSPED]
        else:
            entries += [RIGHT] * a + [LEFT] * b
    if len(rotated.pairs) == 1:
        raise BraidError("single-block words are Type A, not Type C")
    return CuspAssignment(rotated.word(), tuple(entries))


def horizontal_slice_of_letter(params: OneBridgeBraid, letter: int) -> int:
    """Slice index 0..t: 0 is the bridge subword, then the full twist rows."""
    if letter <= params.b:
        return 0
    return 1 + (letter - params.b - 1) // (params.w - 1)


def schema_cusping_1bridge(params: OneBridgeBraid) -> CuspAssignment:
    """Cusping for a 1-bridge braid.

    Even generators are uncusped, as are odd generators in the final
    horizontal slice; every other odd-generator letter is cusped, left on its
    first occurrence and right afterwards.
    """
    word = braid_of_1bridge(params)
    seen: set[int] = set()
    entries = []
    for j, gen in enumerate(word.letters, start=1):
        if gen % 2 == 0 or horizontal_slice_of_letter(params, j) == params.t:
            entries.append(UNCUSPED)
            continue
        entries.append(LEFT if gen not in seen else RIGHT)
        seen.add(gen)
    return CuspAssignment(word, tuple(entries))


# ---------------------------------------------------------------------------
# Branch sectors

@dataclass(frozen=True)
class Incidence:
    arc: str
    side: str  # "main" or "hug"
    direction: str  # "in" or "out"


@dataclass(frozen=True)
class BranchSector:
    kind: str  # "disk" | "band" | "polygon" | "product_disk"
    disks: tuple[int, ...]
    bands: tuple[int, ...]
    position: str | None  # polygon only: "upper" | "lower" | "single"
    incidences: tuple[Incidence, ...]
    face_count: int = 1
    meets_manifold_boundary: bool = True

    @property
    def euler_characteristic(self) -> int:
        # Faces and bands are disks; each band is glued along two segments.
        return self.face_count + len(self.bands) - 2 * len(self.bands)

    @property
    def is_disk(self) -> bool:
        return self.euler_characteristic == 1

    @property
    def name(self) -> str:
        if self.kind == "disk":
            label = "S" + "+".join(str(d) for d in self.disks)
            if self.bands:
                label += "|b" + "+".join(str(b) for b in self.bands)
            return label
        if self.kind == "band":
            return "b" + "+".join(str(b) for b in self.bands)
        if self.kind == "product_disk":
            return f"D{self.bands[0]}"
        arcs = ",".join(sorted(i.arc for i in self.incidences))
        return f"P[{self.position}]({arcs})"

    @property
    def outward_arcs(self) -> tuple[str, ...]:
        return tuple(sorted({i.arc for i in self.incidences if i.direction == "out"}))

    @property
    def inward_only(self) -> bool:
        return bool(self.incidences) and not self.outward_arcs


@dataclass(frozen=True)
class SinkReport:
    violations: tuple[tuple[str, str], ...]
    sink_disk_free: bool


def _branch_side(arc: ArcId, cusped: dict[int, CuspedArc]) -> str:
    cusp = cusped[arc.letter]
    pairing = cusp.minus_pairing if arc.sign == "-" else cusp.plus_pairing
    return "main" if pairing == 1 else "hug"


@dataclass(frozen=True)
class SectorShape:
    """A branch sector before cusp directions are applied.

    The shape depends only on which product disks are selected, so the
    exhaustive search reuses it across all left/right choices.
    """

    kind: str
    disks: tuple[int, ...]
    bands: tuple[int, ...]
    position: str | None
    arc_sides: tuple[tuple[ArcId, str], ...]
    face_count: int


def sector_shapes(
    surface: FiberSurface,
    selected: list[ProductDiskArc],
    layout=None,
) -> list[SectorShape]:
    """Sectors of the complex cut along the selected disks' arcs.

    Faces come from the chord arrangement on each disk; a band joins the two
    faces meeting its attachment stations.  Components holding a closure arc
    are disk sectors, components holding only bands are band sectors, single
    leftover faces are polygon sectors.
    """
    from .surface_model import ChordLayout

    if layout is None:
        layout = ChordLayout(surface, selected)

    faces = []
    for line in sorted(surface.stations):
        faces.extend(layout.faces(line))
    face_ids = {face: ("f", idx) for idx, face in enumerate(faces)}

    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent.setdefault(x, x)
        parent.setdefault(y, y)
        parent[find(x)] = find(y)

    for face in faces:
        parent[face_ids[face]] = face_ids[face]
    station_face: dict[tuple[int, int], tuple] = {}
    for face in faces:
        for station in face.stations:
            key = (face.line, station)
            if key in station_face:
                raise AssertionError(f"two faces claim attachment {key}")
            station_face[key] = face_ids[face]
    for letter, _family in surface.bands:
        node = ("band", letter)
        parent.setdefault(node, node)
        for line in surface.band_lines(letter):
            union(node, station_face[(line, letter)])

    groups: dict[tuple, dict] = {}
    for face in faces:
        root = find(face_ids[face])
        group = groups.setdefault(root, {"faces": [], "bands": []})
        group["faces"].append(face)
    for letter, _family in surface.bands:
        root = find(("band", letter))
        group = groups.setdefault(root, {"faces": [], "bands": []})
        group["bands"].append(letter)

    shapes = []
    for group in groups.values():
        face_list = group["faces"]
        bands = tuple(sorted(group["bands"]))
        disks = tuple(sorted(f.line for f in face_list if f.principal))
        sides: set[tuple[ArcId, str]] = set()
        for face in face_list:
            sides.update(face.chord_sides)
        if disks:
            kind, position = "disk", None
        elif bands:
            kind, position = "band", None
        else:
            kind = "polygon"
            position = _polygon_position(layout, face_list[0])
        shapes.append(
            SectorShape(
                kind,
                disks,
                bands,
                position,
                tuple(sorted(sides, key=lambda p: (str(p[0]), p[1]))),
                len(face_list),
            )
        )
    return shapes


def sector_decomposition(
    surface: FiberSurface,
    selected: list[ProductDiskArc],
    cusped_arcs: list[CuspedArc],
    layout=None,
    shapes: list[SectorShape] | None = None,
) -> list[BranchSector]:
    """Branch sectors with cusp directions; product disks are own sectors."""
    cusped = {c.letter: c for c in cusped_arcs}
    if shapes is None:
        shapes = sector_shapes(surface, selected, layout)

    sectors = []
    for shape in shapes:
        incidences = []
        for arc, side in shape.arc_sides:
            if arc.letter not in cusped:
                continue
            direction = "in" if _branch_side(arc, cusped) == side else "out"
            incidences.append(Incidence(str(arc), side, direction))
        sectors.append(
            BranchSector(
                shape.kind,
                shape.disks,
                shape.bands,
                shape.position,
                tuple(incidences),
                shape.face_count,
            )
        )

    for disk in selected:
        if disk.letter not in cusped:
            continue
        cusp = cusped[disk.letter]
        into_disk, out_of_disk = (
            (str(disk.minus_arc.arc), str(disk.plus_arc.arc))
            if cusp.minus_pairing == 1
            else (str(disk.plus_arc.arc), str(disk.minus_arc.arc))
        )
        sectors.append(
            BranchSector(
                "product_disk",
                (),
                (disk.letter,),
                None,
                (
                    Incidence(into_disk, "disk", "in"),
                    Incidence(out_of_disk, "disk", "out"),
                ),
            )
        )

    sectors.sort(key=lambda s: (s.kind, s.disks, s.bands, s.name))
    return sectors


def _polygon_position(layout, face) -> str:
    """Upper or lower relative to the crossed pair the polygon touches."""
    if not face.crossing_arcs:
        return "single"
    first = min(face.crossing_arcs, key=lambda p: sorted(str(a) for a in p))
    pair = sorted(first, key=str)
    chords = {c.arc: c for c in layout.chords[face.line]}
    plus = next(chords[a] for a in pair if a.sign == "+")
    minus = next(chords[a] for a in pair if a.sign == "-")
    n = len(layout.line_items[face.line])
    start = layout.line_position(plus.head)
    span = (layout.line_position(minus.head) - start) % n
    for mark in face.gap_marks:
        if (mark - start) % n < span:
            return "upper"
    return "lower"


def sink_disk_check(sectors: list[BranchSector]) -> SinkReport:
    """Conservative sufficient criterion for sink-disk freeness.

    A sector is flagged when it has at least one incident cusped arc and
    every incident cusp direction points inward.  Product-disk sectors carry
    one inward and one outward arc by construction and are never flagged.  A
    clean report implies no sink disk; a flagged sector need not be a disk.
    """
    violations = []
    for sector in sectors:
        if sector.kind == "product_disk":
            continue
        if sector.inward_only:
            violations.append(
                (sector.name, "every incident cusped arc points into the sector")
            )
    return SinkReport(tuple(violations), not violations)


# ---------------------------------------------------------------------------
# Switch relations

@dataclass(frozen=True)
class SwitchSystem:
    """Unit-coefficient weight equations across a branch-locus segment."""

    variables: tuple[str, ...]
    equations: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...]

    def __str__(self):
        return "; ".join(
            "+".join(lhs) + " = " + "+".join(rhs) for lhs, rhs in self.equations
        )


_W = ("w1", "w2", "w3", "w4", "w5")

SYSTEM_STACKED = SwitchSystem(
    _W,
    (
        (("w1",), ("w2", "w4")),
        (("w3",), ("w2", "w4")),
        (("w1",), ("w5", "w3")),
    ),
)

SYSTEM_STACKED_REVERSED = SwitchSystem(
    _W,
    (
        (("w1", "w4"), ("w2",)),
        (("w3", "w4"), ("w2",)),
        (("w1", "w5"), ("w3",)),
    ),
)

SYSTEM_FIRST_COLUMN = SwitchSystem(
    _W,
    (
        (("w1",), ("w2", "w4")),
        (("w3",), ("w1", "w5")),
        (("w3",), ("w2", "w4")),
    ),
)


def local_switch_system(selector: BraidClass | OneBridgeBraid) -> SwitchSystem:
    """The local weight system ruling out a fully carried annulus.

    Classes whose first two letters are cusped leftward use the stacked
    model; the right-cusped classes (single block, reduced torus) use its
    reversed variant; 1-bridge braids use the first-column model.
    """
    if isinstance(selector, OneBridgeBraid):
        return SYSTEM_FIRST_COLUMN
    if selector in (BraidClass.TYPE_B, BraidClass.TYPE_C):
        return SYSTEM_STACKED
    if selector in (BraidClass.TYPE_A, BraidClass.REDUCED_TORUS):
        return SYSTEM_STACKED_REVERSED
    raise BraidError(f"no switch system for {selector}")


def positive_solution_exists(system: SwitchSystem) -> bool:
    """Is there a strictly positive rational solution?

    The systems are homogeneous, so strict positivity is equivalent to
    feasibility of the equations together with every variable >= 1; that is
    decided exactly by Fourier-Motzkin elimination over the rationals.
    """
    variables = list(system.variables)
    index = {v: i for i, v in enumerate(variables)}
    rows: list[tuple[list[Fraction], Fraction]] = []

    def add(coeffs: dict[str, Fraction], const: Fraction):
        row = [Fraction(0)] * len(variables)
        for v, c in coeffs.items():
            row[index[v]] += c
        rows.append((row, const))

    for lhs, rhs in system.equations:
        coeffs: dict[str, Fraction] = {}
        for v in lhs:
            coeffs[v] = coeffs.get(v, Fraction(0)) + 1
        for v in rhs:
            coeffs[v] = coeffs.get(v, Fraction(0)) - 1
        add(dict(coeffs), Fraction(0))
        add({v: -c for v, c in coeffs.items()}, Fraction(0))
    for v in variables:
        add({v: Fraction(1)}, Fraction(1))  # v >= 1

    for col in range(len(variables)):
        positive = [r for r in rows if r[0][col] > 0]
        negative = [r for r in rows if r[0][col] < 0]
        neutral = [r for r in rows if r[0][col] == 0]
        combined = list(neutral)
        for prow, pconst in positive:
            for nrow, nconst in negative:
                scale_p, scale_n = -nrow[col], prow[col]
                row = [scale_p * a + scale_n * b for a, b in zip(prow, nrow)]
                combined.append((row, scale_p * pconst + scale_n * nconst))
        rows = combined

    return all(const <= 0 for row, const in rows)
