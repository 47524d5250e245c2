"""Brute-force verifiers against the main pipeline."""

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from braidslopes.braid_core import (
    Blocks,
    BraidWord,
    NormalizationError,
    ReducedTorus,
    classify,
    closure_component_count,
    cycle_type,
    normalize_3braid,
    parse_braid,
)
from braidslopes.branched_surface import schema_cusping
from braidslopes.certificate import run_assignment
from braidslopes.oracle import (
    SearchBudgetError,
    chord_crossing_oracle,
    exhaustive_cusp_search,
    mis_bruteforce,
    rewrite_bfs,
)
from braidslopes.surface_model import (
    ChordLayout,
    build_fiber_surface,
    product_disks,
    standardize,
)


# -- rewriting ----------------------------------------------------------------

def test_rewrite_bfs_torus_word():
    result = rewrite_bfs(parse_braid("w=3: (s1 s2)^4"))
    assert result.normal == Blocks(((3, 1), (3, 1)))
    assert result.final_word.letters == (1, 1, 1, 2, 1, 1, 1, 2)
    assert result.steps  # a genuine rewrite happened


def test_rewrite_bfs_already_normal():
    result = rewrite_bfs(parse_braid("w=3: s1^7 s2^2 s1^2 s2"))
    assert result.normal == Blocks(((7, 2), (2, 1)))
    assert result.steps == ()


def test_rewrite_bfs_destabilizes():
    result = rewrite_bfs(parse_braid("w=3: s1^5 s2"))
    assert result.normal == ReducedTorus(5)
    assert result.final_word.strand_count == 2
    assert [s.move for s in result.steps] == ["destabilize_top"]


def test_rewrite_bfs_agrees_with_normalize_up_to_length_10():
    checked = 0
    for length in range(2, 11):
        for letters in product((1, 2), repeat=length):
            word = BraidWord(3, letters)
            if closure_component_count(word) != 1:
                continue
            checked += 1
            oracle = rewrite_bfs(word)
            direct = normalize_3braid(word)
            assert oracle.normal == direct, letters
            # invariant audit along the move path
            before = word
            for step in oracle.steps:
                if step.move.startswith("destabilize"):
                    assert step.word.letter_count == before.letter_count - 1
                    assert step.word.strand_count == before.strand_count - 1
                    assert len(cycle_type(step.word)) == len(cycle_type(before))
                else:
                    assert step.word.letter_count == before.letter_count
                    assert cycle_type(step.word) == cycle_type(before)
                before = step.word
    assert checked > 300


def test_rewrite_bfs_depth_exhaustion():
    with pytest.raises(NormalizationError):
        rewrite_bfs(parse_braid("w=3: (s1 s2)^4"), max_depth=0)


# -- exhaustive search -----------------------------------------------------------

def search_with_schema(pairs, budget=12):
    word = Blocks(pairs).word()
    normal = normalize_3braid(word)
    schema = schema_cusping(classify(normal), normal)
    return exhaustive_cusp_search(schema.word, budget=budget, schema=schema)


def test_search_type_b_reaches_bound():
    report = search_with_schema(((3, 1), (3, 1)))
    assert report.best_k == 5  # 2g - 1
    assert report.schema_is_witness
    assert not report.counterexamples
    disk_count = 6
    assert report.examined == 3**disk_count


def test_search_all_uncusped_included():
    word = Blocks(((3, 1), (3, 1))).word()
    surface = build_fiber_surface(word)
    report = exhaustive_cusp_search(word)
    # the all-uncusped assignment is sink free with k = 0, hence counted
    assert report.sink_free >= 1
    run = run_assignment(
        surface,
        __import__("braidslopes.branched_surface", fromlist=["CuspAssignment"])
        .CuspAssignment(word, ("U",) * word.letter_count),
    )
    assert run.sink.sink_disk_free and run.unlinked_max == 0


def test_search_budget():
    with pytest.raises(SearchBudgetError):
        exhaustive_cusp_search(Blocks(((7, 2), (2, 1))).word(), budget=4)


def test_search_examined_is_product_of_options():
    word = Blocks(((3, 2), (2, 1))).word()
    report = exhaustive_cusp_search(word)
    disks = len(product_disks(build_fiber_surface(word)))
    assert report.examined == 3**disks


# -- chord oracle -----------------------------------------------------------------

def test_chord_oracle_nested_and_interleaved():
    assert chord_crossing_oracle(8, [("a", 0, 4), ("b", 1, 3)]) == []
    assert chord_crossing_oracle(8, [("a", 0, 4), ("b", 1, 5)]) == [("a", "b")]


def test_chord_oracle_matches_pretzel_census():
    word = parse_braid("w=3: s1^7 s2^2 s1^2 s2")
    surface = build_fiber_surface(word)
    disks, _ = standardize(surface, product_disks(surface))
    layout = ChordLayout(surface, disks)
    chords = [
        (str(c.arc), layout.line_position(c.head), layout.line_position(c.tail))
        for c in layout.chords[2]
    ]
    pairs = chord_crossing_oracle(len(layout.line_items[2]), chords)
    assert pairs == [("a7+", "a9-")]


@given(
    sum_budget=st.integers(4, 9),
    seed=st.integers(0, 10_000),
)
@settings(max_examples=60, deadline=None)
def test_chord_oracle_matches_census_everywhere(sum_budget, seed):
    from braidslopes.report import block_sequences

    words = [b.word() for b in block_sequences(sum_budget)]
    if not words:
        return
    word = words[seed % len(words)]
    surface = build_fiber_surface(word)
    all_disks, _ = standardize(surface, product_disks(surface))
    mask = seed
    selected = [d for i, d in enumerate(all_disks) if (mask >> i) & 1]
    layout = ChordLayout(surface, selected)
    census_pairs = {
        (str(p.arc), str(m.arc)) for p, m in layout.crossings()
    }
    oracle_pairs = set()
    for line in surface.stations:
        chords = [
            (str(c.arc), layout.line_position(c.head), layout.line_position(c.tail))
            for c in layout.chords[line]
        ]
        for a, b in chord_crossing_oracle(len(layout.line_items[line]), chords):
            plus, minus = (a, b) if a.endswith("+") else (b, a)
            oracle_pairs.add((plus, minus))
    assert oracle_pairs == census_pairs


# -- independent set oracle --------------------------------------------------------

def test_mis_bruteforce_small():
    assert mis_bruteforce([1, 2, 3, 4], [(1, 2)]) == 3
    assert mis_bruteforce([1], []) == 1
