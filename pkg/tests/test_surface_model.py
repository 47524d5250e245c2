"""Fiber surface construction, product disks, standardization, censuses."""

import pytest
from hypothesis import given, settings, strategies as st

from braidslopes.braid_core import (
    Blocks,
    BraidWord,
    NotAKnotError,
    OneBridgeBraid,
    braid_of_1bridge,
    closure_component_count,
    parse_braid,
)
from braidslopes.surface_model import (
    ChordLayout,
    build_fiber_surface,
    intersection_census,
    product_disks,
    standardize,
)

PRETZEL = parse_braid("w=3: s1^7 s2^2 s1^2 s2")


def pretzel_surface():
    return build_fiber_surface(PRETZEL)


# -- construction -------------------------------------------------------------

def test_build_pretzel_surface():
    surface = pretzel_surface()
    assert surface.disk_count == 3
    assert surface.band_count == 12


def test_band_count_equals_letter_count():
    for text in ["w=2: s1^3", "w=3: s1^3 s2^3", "w=4: s1 s2 s3"]:
        word = parse_braid(text)
        if closure_component_count(word) != 1:
            continue
        surface = build_fiber_surface(word)
        assert surface.band_count == word.letter_count


def test_build_one_bridge_surface():
    surface = build_fiber_surface(braid_of_1bridge(OneBridgeBraid(7, 4, 2)))
    assert surface.disk_count == 7
    assert surface.band_count == 16


def test_build_rejects_links():
    with pytest.raises(NotAKnotError):
        build_fiber_surface(parse_braid("w=3: s1^2 s2^2"))


def test_boundary_visits_every_band_twice():
    surface = pretzel_surface()
    edges = [item for item in surface.boundary_order if item[0] == "band"]
    per_band = {}
    for _, letter, line in edges:
        per_band.setdefault(letter, []).append(line)
    assert set(per_band) == set(range(1, 13))
    # one band-edge traversal per side of every band
    assert all(len(sides) == 2 for sides in per_band.values())


@given(
    strands=st.integers(2, 5),
    seed=st.lists(st.integers(0, 100), min_size=1, max_size=12),
)
@settings(max_examples=150, deadline=None)
def test_boundary_is_single_circle_iff_knot(strands, seed):
    letters = tuple(1 + (s % (strands - 1)) for s in seed)
    braid = BraidWord(strands, letters)
    components = closure_component_count(braid)
    if components == 1:
        surface = build_fiber_surface(braid)
        # the traversal closed up through every disk piece exactly once
        pieces = sum(len(surface.stations[line]) for line in surface.stations)
        assert len(surface.piece_order) == pieces
    else:
        with pytest.raises(NotAKnotError):
            build_fiber_surface(braid)


# -- product disks ------------------------------------------------------------

def test_pretzel_product_disks():
    disks = product_disks(pretzel_surface())
    assert len(disks) == 10
    families = {1: [], 2: []}
    for d in disks:
        families[d.family].append(d.letter)
    assert families[1] == [1, 2, 3, 4, 5, 6, 7, 10]
    assert families[2] == [8, 9]
    pairs = {d.letter: d.partner for d in disks}
    assert pairs[7] == 10 and pairs[9] == 12 and pairs[10] == 11


def test_single_occurrence_contributes_no_disk():
    surface = build_fiber_surface(parse_braid("w=3: s1^5 s2"))
    disks = product_disks(surface)
    assert [d.letter for d in disks] == [1, 2, 3, 4]  # no sigma_2 disk


def test_torus_disk_count():
    for n in (3, 5, 7):
        surface = build_fiber_surface(BraidWord(2, (1,) * n))
        assert len(product_disks(surface)) == n - 1


def test_disk_count_is_occurrences_minus_one():
    word = braid_of_1bridge(OneBridgeBraid(7, 4, 2))
    surface = build_fiber_surface(word)
    disks = product_disks(surface)
    per_family = {}
    for letter in word.letters:
        per_family[letter] = per_family.get(letter, 0) + 1
    assert len(disks) == sum(c - 1 for c in per_family.values())


# -- standardization ----------------------------------------------------------

def test_pretzel_isotopy_order():
    surface = pretzel_surface()
    _, order = standardize(surface, product_disks(surface))
    assert order == [
        "a9+", "a10+", "a7+", "a8+", "a6+", "a5+", "a4+", "a3+", "a2+", "a1+",
    ]


def test_plus_arcs_land_in_right_disk_of_family():
    surface = pretzel_surface()
    disks, _ = standardize(surface, product_disks(surface))
    for disk in disks:
        assert disk.plus_arc.line == disk.family + 1
        assert disk.plus_arc.line in (2, 3)
        assert disk.minus_arc.line == disk.family


def test_one_bridge_plus_arcs_in_even_disks():
    from braidslopes.branched_surface import schema_cusping_1bridge

    params = OneBridgeBraid(7, 4, 2)
    surface = build_fiber_surface(braid_of_1bridge(params))
    disks, _ = standardize(surface, product_disks(surface))
    cusped = set(schema_cusping_1bridge(params).cusped_letters)
    for disk in disks:
        if disk.letter in cusped:
            assert disk.plus_arc.line % 2 == 0
            assert disk.minus_arc.line % 2 == 1


def test_standardization_keeps_minus_arcs():
    surface = pretzel_surface()
    raw = product_disks(surface)
    std, _ = standardize(surface, raw)
    assert [d.minus_arc for d in raw] == [d.minus_arc for d in std]


# -- intersection censuses ------------------------------------------------------

def test_pretzel_census_pre():
    surface = pretzel_surface()
    census = intersection_census(surface, product_disks(surface), "pre")
    assert (census.type1_count, census.type2_count) == (8, 1)
    assert census.type2_pairs == ((7, 9),)


def test_pretzel_census_post():
    surface = pretzel_surface()
    disks, _ = standardize(surface, product_disks(surface))
    census = intersection_census(surface, disks, "post")
    assert census.type1_count == 0
    assert census.type2_pairs == ((7, 9),)


def test_standardization_eliminates_only_type1():
    surface = pretzel_surface()
    raw = product_disks(surface)
    pre = intersection_census(surface, raw, "pre")
    std, _ = standardize(surface, raw)
    post = intersection_census(surface, std, "post")
    assert pre.type2_pairs == post.type2_pairs
    assert post.type1_count == 0


@pytest.mark.parametrize(
    "pairs,expected",
    [
        # all b_t >= 2 among the first k-1 blocks: one crossing per junction
        (((3, 2), (2, 1)), 1),
        (((2, 3), (3, 2)), 1),
        (((2, 2), (2, 2), (3, 1)), 2),
        (((2, 2), (2, 3), (3, 2)), 2),
        # unit sigma_2 runs kill their junction crossing
        (((3, 1), (3, 1)), 0),
        (((2, 1), (2, 1), (3, 1)), 0),
    ],
)
def test_type2_count_by_block_tails(pairs, expected):
    blocks = Blocks(pairs)
    word = blocks.word()
    assert closure_component_count(word) == 1
    surface = build_fiber_surface(word)
    disks, _ = standardize(surface, product_disks(surface))
    census = intersection_census(surface, disks, "post")
    assert census.type2_count == expected


def test_census_junction_pairs_are_block_ends():
    # crossings join the last sigma_1 and last sigma_2 of the same block
    blocks = Blocks(((2, 2), (2, 3), (3, 2)))
    word = blocks.word()
    assert closure_component_count(word) == 1
    surface = build_fiber_surface(word)
    disks, _ = standardize(surface, product_disks(surface))
    census = intersection_census(surface, disks, "post")
    assert census.type2_pairs == ((2, 4), (6, 9))


def test_type2_count_formula_over_sweep():
    """Post-standardization crossings: one per junction with b_t >= 2, t < k.

    In particular the count is at most k-1, with equality exactly when every
    junction has a sigma_2 run of length >= 2.
    """
    from braidslopes.report import block_sequences

    for blocks in block_sequences(10):
        word = blocks.word()
        surface = build_fiber_surface(word)
        disks, _ = standardize(surface, product_disks(surface))
        census = intersection_census(surface, disks, "post")
        expected = sum(1 for _, b in blocks.pairs[:-1] if b >= 2)
        assert census.type2_count == expected, blocks
        assert census.type2_count <= blocks.block_count - 1


def test_faces_all_touch_boundary():
    surface = pretzel_surface()
    disks, _ = standardize(surface, product_disks(surface))
    layout = ChordLayout(surface, disks)
    for line in surface.stations:
        for face in layout.faces(line):
            assert face.gap_marks, "face with no boundary stretch"


def test_every_attachment_on_exactly_one_face():
    surface = pretzel_surface()
    disks, _ = standardize(surface, product_disks(surface))
    layout = ChordLayout(surface, disks)
    for line in surface.stations:
        claimed = [s for face in layout.faces(line) for s in face.stations]
        assert sorted(claimed) == sorted(surface.stations[line])
