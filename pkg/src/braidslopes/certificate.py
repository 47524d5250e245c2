"""End-to-end analyses and the certificate document.

The certificate is a single JSON document with a fixed field order; every
value is an exact integer, string, or nested list of those.  Identical input
and tool version give byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import __version__
from .braid_core import (
    Blocks,
    BraidClass,
    BraidError,
    BraidWord,
    GenusData,
    NormalizedThreeBraid,
    OneBridgeBraid,
    ReducedTorus,
    Unknot,
    braid_of_1bridge,
    classify,
    genus_1bridge,
    genus_3braid,
    normalize_3braid,
    parse_braid,
    schema_block_rotation,
)
from .branched_surface import (
    BranchSector,
    CuspAssignment,
    CuspedArc,
    SinkReport,
    local_switch_system,
    positive_solution_exists,
    propagate_cusps,
    schema_cusping,
    schema_cusping_1bridge,
    sector_decomposition,
    sink_disk_check,
)
from .surface_model import (
    ChordLayout,
    FiberSurface,
    IntersectionCensus,
    ProductDiskArc,
    build_fiber_surface,
    product_disks,
    standardize,
)
from .train_track import (
    BoundarySector,
    SlopeInterval,
    linked_pairs,
    max_unlinked,
    maximal_endpoints,
    slope_interval,
    gamma_count,
)


@dataclass
class PipelineRun:
    """One cusp assignment evaluated on one fiber surface."""

    surface: FiberSurface
    assignment: CuspAssignment
    disks: list[ProductDiskArc]  # all available, standardized
    selected: list[ProductDiskArc]
    cusped: list[CuspedArc]
    isotopy_order: list[str]
    census_pre: IntersectionCensus
    census_post: IntersectionCensus
    sectors: list[BranchSector]
    sink: SinkReport
    boundary_sectors: list[BoundarySector]
    linked: list[tuple[int, int]]
    unlinked_max: int

    @property
    def sector_census(self) -> dict[str, int]:
        counts = {"disk": 0, "band": 0, "polygon": 0, "product_disk": 0}
        for sector in self.sectors:
            counts[sector.kind] += 1
        return counts

    def interval(self) -> SlopeInterval:
        return slope_interval(self.boundary_sectors, self.unlinked_max)


def run_assignment(surface: FiberSurface, assignment: CuspAssignment) -> PipelineRun:
    """Run the branched-surface pipeline for one cusp assignment.

    The chord layout is built once and shared by the census, the sector
    decomposition, and the train-track analysis; the pre-standardization
    census adds the crossings that standardization eliminates (one per pair
    of consecutive selected disks in a family).
    """
    raw = product_disks(surface)
    chosen_letters = set(assignment.cusped_letters)
    standardized, isotopy_order = standardize(surface, raw)
    selected = [d for d in standardized if d.letter in chosen_letters]
    layout = ChordLayout(surface, selected)
    pairs = tuple(
        (plus.arc.letter, minus.arc.letter) for plus, minus in layout.crossings()
    )
    type1 = sum(1 for d in selected if d.partner in chosen_letters)
    census_pre = IntersectionCensus(type1, len(pairs), pairs)
    census_post = IntersectionCensus(0, len(pairs), pairs)
    cusped = propagate_cusps(assignment, standardized)
    sectors = sector_decomposition(surface, selected, cusped, layout=layout)
    sink = sink_disk_check(sectors)
    boundary = maximal_endpoints(cusped, selected, layout)
    linked = linked_pairs(boundary, layout.knot_size)
    k = max_unlinked(boundary, linked)
    return PipelineRun(
        surface,
        assignment,
        standardized,
        selected,
        cusped,
        isotopy_order,
        census_pre,
        census_post,
        sectors,
        sink,
        boundary,
        linked,
        k,
    )


@dataclass
class Analysis:
    """Full analysis of one input, ready for certification."""

    kind: str  # "3braid" | "1bridge" | "unknot"
    input_text: str
    input_word: BraidWord | None
    normalized: NormalizedThreeBraid | None
    braid_class: BraidClass | None
    block_rotation: int
    analysis_word: BraidWord | None
    genus: GenusData
    params: OneBridgeBraid | None
    run: PipelineRun | None
    expected_bound: int
    gamma: int | None
    failures: list[str]

    @property
    def passes(self) -> bool:
        return not self.failures


def _check_3braid(analysis: Analysis) -> list[str]:
    run = analysis.run
    failures = []
    if not run.sink.sink_disk_free:
        names = ", ".join(name for name, _ in run.sink.violations)
        failures.append(f"sink disk check failed: {names}")
    if run.unlinked_max != analysis.expected_bound:
        failures.append(
            f"carried bound {run.unlinked_max} != 2g-1 = {analysis.expected_bound}"
        )
    if len(run.linked) != 1:
        failures.append(f"expected exactly one linked pair, found {len(run.linked)}")
    return failures


def analyze_3braid(
    braid: BraidWord, schema: str = "auto", input_text: str | None = None
) -> Analysis:
    """Normalize, classify, and certify a positive 3-braid knot."""
    if input_text is None:
        input_text = str(braid)
    normal = normalize_3braid(braid)
    genus = genus_3braid(normal)
    if isinstance(normal, Unknot):
        return Analysis(
            "unknot", input_text, braid, normal, BraidClass.UNKNOT, 0, None,
            genus, None, None, 0, None, [],
        )
    braid_class = classify(normal)
    if schema != "auto":
        wanted = {"typeA": BraidClass.TYPE_A, "typeB": BraidClass.TYPE_B,
                  "typeC": BraidClass.TYPE_C}[schema]
        if braid_class is not wanted:
            raise BraidError(
                f"schema {schema} does not apply: word is {braid_class.value}"
            )
    rotation = 0
    if isinstance(normal, Blocks):
        rotation = schema_block_rotation(normal)
    assignment = schema_cusping(braid_class, normal)
    surface = build_fiber_surface(assignment.word)
    run = run_assignment(surface, assignment)
    analysis = Analysis(
        "3braid", input_text, braid, normal, braid_class, rotation,
        assignment.word, genus, None, run, genus.two_g_minus_one, None, [],
    )
    analysis.failures = _check_3braid(analysis)
    return analysis


def analyze_braid_text(text: str, schema: str = "auto") -> Analysis:
    braid = parse_braid(text)
    if braid.strand_count != 3:
        raise BraidError(
            f"analyze expects a 3-braid; got {braid.strand_count} strands"
            " (use onebridge for 1-bridge braids)"
        )
    return analyze_3braid(braid, schema=schema, input_text=text)


def analyze_1bridge(params: OneBridgeBraid) -> Analysis:
    """Certify the 1-bridge construction for K(w, b, t)."""
    genus = genus_1bridge(params)
    word = braid_of_1bridge(params)
    assignment = schema_cusping_1bridge(params)
    surface = build_fiber_surface(word)
    run = run_assignment(surface, assignment)
    gamma = gamma_count(params)
    failures = []
    if not run.sink.sink_disk_free:
        names = ", ".join(name for name, _ in run.sink.violations)
        failures.append(f"sink disk check failed: {names}")
    if run.linked:
        failures.append(f"expected no linked pairs, found {run.linked}")
    if assignment.cusped_count != gamma:
        failures.append(
            f"cusped count {assignment.cusped_count} != parity count {gamma}"
        )
    if gamma < genus.genus:
        failures.append(f"parity count {gamma} < genus {genus.genus}")
    if run.unlinked_max != gamma:
        failures.append(f"carried bound {run.unlinked_max} != parity count {gamma}")
    return Analysis(
        "1bridge", str(params), word, None, None, 0, word, genus, params,
        run, gamma, gamma, failures,
    )


# ---------------------------------------------------------------------------
# Certificate document

def _normalized_field(analysis: Analysis):
    normal = analysis.normalized
    if normal is None:
        return {"form": "one_bridge", "w": analysis.params.w,
                "b": analysis.params.b, "t": analysis.params.t}
    if isinstance(normal, Blocks):
        return {"form": "blocks", "pairs": [list(p) for p in normal.pairs],
                "rotation": analysis.block_rotation}
    if isinstance(normal, ReducedTorus):
        return {"form": "reduced_torus", "n": normal.n}
    return {"form": "unknot"}


def certificate(analysis: Analysis) -> dict:
    """The certificate document, fixed field order, integers exact."""
    doc: dict = {
        "input": analysis.input_text,
        "normalized": _normalized_field(analysis),
        "class": analysis.braid_class.value if analysis.braid_class else "one_bridge",
        "genus": {
            "euler_characteristic": analysis.genus.euler_characteristic,
            "genus": analysis.genus.genus,
            "two_g_minus_one": analysis.genus.two_g_minus_one,
        },
    }
    run = analysis.run
    if run is None:
        doc.update({
            "degenerate": True,
            "verdict": "pass",
            "tool_version": __version__,
        })
        return doc
    doc["analysis_word"] = str(analysis.analysis_word)
    doc["cusping"] = run.assignment.compact()
    doc["cusped_count"] = run.assignment.cusped_count
    doc["product_disks"] = len(run.disks)
    doc["isotopy_order"] = run.isotopy_order
    doc["intersections"] = {
        "pre": {"type1": run.census_pre.type1_count,
                "type2": run.census_pre.type2_count},
        "post": {"type1": run.census_post.type1_count,
                 "type2": run.census_post.type2_count,
                 "pairs": [[f"a{p}+", f"a{m}-"] for p, m in run.census_post.type2_pairs]},
    }
    doc["sector_census"] = run.sector_census
    doc["sectors"] = [
        {
            "name": sector.name,
            "kind": sector.kind,
            "meets_boundary": sector.meets_manifold_boundary,
            "outward": list(sector.outward_arcs),
        }
        for sector in run.sectors
    ]
    doc["sink_disk_free"] = run.sink.sink_disk_free
    doc["sink_violations"] = [list(v) for v in run.sink.violations]
    doc["linked_pairs"] = [list(p) for p in run.linked]
    doc["max_unlinked"] = run.unlinked_max
    doc["slope_interval"] = str(run.interval()) if run.boundary_sectors else None
    if analysis.gamma is not None:
        doc["gamma"] = analysis.gamma
    selector = analysis.params if analysis.params else analysis.braid_class
    system = local_switch_system(selector)
    doc["switch_system"] = {
        "equations": str(system),
        "positive_solution": positive_solution_exists(system),
    }
    doc["expected_bound"] = analysis.expected_bound
    doc["verdict"] = "pass" if analysis.passes else "fail"
    doc["failures"] = analysis.failures
    doc["tool_version"] = __version__
    return doc


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def to_text(doc: dict) -> str:
    """Human-readable summary of a certificate."""
    lines = [f"input:            {doc['input']}"]
    normal = doc["normalized"]
    if normal["form"] == "blocks":
        shape = " ".join(f"(a={a}, b={b})" for a, b in normal["pairs"])
    elif normal["form"] == "reduced_torus":
        shape = f"torus(2,{normal['n']})"
    elif normal["form"] == "one_bridge":
        shape = f"K({normal['w']},{normal['b']},{normal['t']})"
    else:
        shape = "unknot"
    lines.append(f"normalized:       {shape}")
    lines.append(f"class:            {doc['class']}")
    genus = doc["genus"]
    lines.append(
        f"genus:            g={genus['genus']}  chi={genus['euler_characteristic']}"
        f"  2g-1={genus['two_g_minus_one']}"
    )
    if doc.get("degenerate"):
        lines.append("verdict:          pass (degenerate)")
        return "\n".join(lines) + "\n"
    lines.append(f"cusping:          {doc['cusping']}")
    census = doc["sector_census"]
    lines.append(
        "sectors:          "
        f"{census['disk']} disk / {census['band']} band / "
        f"{census['polygon']} polygon / {census['product_disk']} product-disk"
    )
    lines.append(f"sink disk free:   {doc['sink_disk_free']}")
    lines.append(f"linked pairs:     {doc['linked_pairs']}")
    lines.append(f"slope interval:   {doc['slope_interval']}")
    lines.append(
        "switch system:    positive solution = "
        f"{doc['switch_system']['positive_solution']}"
    )
    lines.append(f"verdict:          {doc['verdict']}")
    for failure in doc["failures"]:
        lines.append(f"  failure: {failure}")
    return "\n".join(lines) + "\n"
