"""Acceptance criteria, one test per criterion, each printing a verdict line.

Every tolerance is exact integer equality; runtime budgets are asserted with
wall-clock checks.
"""

import time
from itertools import product

from braidslopes.braid_core import (
    Blocks,
    BraidClass,
    BraidWord,
    classify,
    closure_component_count,
    genus_1bridge,
    genus_3braid,
    normalize_3braid,
    parse_braid,
)
from braidslopes.branched_surface import (
    SYSTEM_FIRST_COLUMN,
    SYSTEM_STACKED,
    SYSTEM_STACKED_REVERSED,
    SwitchSystem,
    positive_solution_exists,
    schema_cusping,
)
from braidslopes.certificate import analyze_1bridge, analyze_3braid
from braidslopes.oracle import (
    chord_crossing_oracle,
    exhaustive_cusp_search,
    mis_bruteforce,
    rewrite_bfs,
)
from braidslopes.report import block_sequences, one_bridge_grid
from braidslopes.surface_model import (
    ChordLayout,
    build_fiber_surface,
    intersection_census,
    product_disks,
    standardize,
)
from braidslopes.train_track import max_unlinked


def report(n, label, started):
    print(f"ACCEPTANCE {n}: PASS ({time.monotonic() - started:.2f}s) {label}")


def test_acceptance_1_pretzel_end_to_end():
    started = time.monotonic()
    word = parse_braid("w=3: s1^7 s2^2 s1^2 s2")
    normal = normalize_3braid(word)
    assert normal == Blocks(((7, 2), (2, 1)))
    assert classify(normal) is BraidClass.TYPE_C
    assert genus_3braid(normal).genus == 5

    surface = build_fiber_surface(word)
    raw = product_disks(surface)
    assert len(raw) == 10
    pre = intersection_census(surface, raw, "pre")
    assert (pre.type1_count, pre.type2_count) == (8, 1)
    std, _ = standardize(surface, raw)
    post = intersection_census(surface, std, "post")
    assert (post.type1_count, post.type2_count) == (0, 1)
    assert post.type2_pairs == ((7, 9),)

    analysis = analyze_3braid(word)
    run = analysis.run
    census = run.sector_census
    assert (census["disk"], census["band"], census["polygon"]) == (3, 7, 2)
    assert run.sink.sink_disk_free
    assert run.linked == [(8, 9)]
    assert run.unlinked_max == 9
    assert str(run.interval()) == "(-inf, 9)"
    elapsed = time.monotonic() - started
    assert elapsed < 1.0, f"pipeline took {elapsed:.2f}s"
    report(1, "P(-2,3,7) end-to-end", started)


def test_acceptance_2_schema_soundness_sweep():
    started = time.monotonic()
    count = 0
    for blocks in block_sequences(12):
        total = blocks.sigma1_total + blocks.sigma2_total
        analysis = analyze_3braid(blocks.word())
        run = analysis.run
        assert run.sink.sink_disk_free, blocks
        assert len(run.linked) == 1, blocks
        assert run.unlinked_max == total - 3, blocks
        assert run.unlinked_max == analysis.genus.two_g_minus_one, blocks
        count += 1
    elapsed = time.monotonic() - started
    assert count >= 100
    assert elapsed < 60.0, f"sweep took {elapsed:.1f}s"
    report(2, f"schema soundness on {count} words with c1+c2 <= 12", started)


def test_acceptance_3_one_bridge_sweep():
    started = time.monotonic()
    count = 0
    for params in one_bridge_grid(9, 4):
        analysis = analyze_1bridge(params)
        run = analysis.run
        gamma = analysis.gamma
        assert run.sink.sink_disk_free, params
        assert run.linked == [], params
        assert run.assignment.cusped_count == gamma, params
        assert gamma >= genus_1bridge(params).genus, params
        assert run.unlinked_max == gamma, params
        count += 1
    elapsed = time.monotonic() - started
    assert elapsed < 60.0, f"sweep took {elapsed:.1f}s"
    report(3, f"1-bridge sweep over {count} knots (w <= 9, t <= 4)", started)


def test_acceptance_4_switch_systems():
    started = time.monotonic()
    assert not positive_solution_exists(SYSTEM_STACKED)
    assert not positive_solution_exists(SYSTEM_STACKED_REVERSED)
    assert not positive_solution_exists(SYSTEM_FIRST_COLUMN)
    trivial = SwitchSystem(("w1", "w2"), ((("w1",), ("w2",)),))
    assert positive_solution_exists(trivial)
    report(4, "switch systems: three infeasible, trivial feasible", started)


def test_acceptance_5_oracle_equivalence():
    started = time.monotonic()

    searched = 0
    for blocks in block_sequences(8):
        normal = normalize_3braid(blocks.word())
        schema = schema_cusping(classify(normal), normal)
        search = exhaustive_cusp_search(schema.word, budget=12, schema=schema)
        expected = genus_3braid(normal).two_g_minus_one
        assert search.schema_k == expected, blocks
        assert search.schema_is_witness, blocks
        assert not search.counterexamples, blocks
        searched += 1
    # the worked example reaches its bound inside the full search space
    word = Blocks(((7, 2), (2, 1))).word()
    normal = normalize_3braid(word)
    schema = schema_cusping(classify(normal), normal)
    search = exhaustive_cusp_search(word, budget=12, schema=schema)
    assert search.best_k == 9 and search.schema_is_witness

    census_checked = 0
    for blocks in block_sequences(9):
        word = blocks.word()
        surface = build_fiber_surface(word)
        disks, _ = standardize(surface, product_disks(surface))
        layout = ChordLayout(surface, disks)
        census_pairs = {
            (str(p.arc), str(m.arc)) for p, m in layout.crossings()
        }
        oracle_pairs = set()
        for line in surface.stations:
            chords = [
                (str(c.arc), layout.line_position(c.head),
                 layout.line_position(c.tail))
                for c in layout.chords[line]
            ]
            hits = chord_crossing_oracle(len(layout.line_items[line]), chords)
            for a, b in hits:
                plus, minus = (a, b) if a.endswith("+") else (b, a)
                oracle_pairs.add((plus, minus))
        assert oracle_pairs == census_pairs, blocks
        census_checked += 1

    from braidslopes.train_track import BoundarySector

    mis_checked = 0
    for n, edge_seed in product((5, 10, 16, 20), range(5)):
        letters = list(range(1, n + 1))
        pairs = sorted(
            {
                tuple(sorted(((i * 7 + edge_seed) % n + 1, (i * 13 + 3) % n + 1)))
                for i in range(2 * n)
            }
        )
        pairs = [p for p in pairs if p[0] != p[1]]
        sectors = [BoundarySector(j, 2 * j, 2 * j + 1) for j in letters]
        assert max_unlinked(sectors, pairs) == mis_bruteforce(letters, pairs)
        mis_checked += 1

    elapsed = time.monotonic() - started
    assert elapsed < 600.0, f"oracle suite took {elapsed:.1f}s"
    report(
        5,
        f"oracle equivalence: {searched} searches, {census_checked} censuses, "
        f"{mis_checked} independent-set instances",
        started,
    )


def test_acceptance_6_normalization_oracle():
    started = time.monotonic()
    result = rewrite_bfs(parse_braid("w=3: (s1 s2)^4"))
    assert result.final_word == BraidWord(3, (1, 1, 1, 2, 1, 1, 1, 2))
    assert result.normal == Blocks(((3, 1), (3, 1)))

    checked = 0
    for length in range(2, 11):
        for letters in product((1, 2), repeat=length):
            word = BraidWord(3, letters)
            if closure_component_count(word) != 1:
                continue
            oracle = rewrite_bfs(word)  # validates every move internally
            assert oracle.normal == normalize_3braid(word), letters
            checked += 1
    assert checked > 300
    report(6, f"normalization oracle on {checked} words of length <= 10", started)


def test_acceptance_7_pretzel_family():
    started = time.monotonic()
    for q in range(1, 16, 2):
        text = f"w=3: s1^{q} s2^2 s1^2 s2"
        analysis = analyze_3braid(parse_braid(text))
        assert analysis.run is not None, text
        assert analysis.run.unlinked_max == q + 2, text
        assert analysis.passes, (text, analysis.failures)
    report(7, "pretzel family k = q + 2 for odd q in 1..15", started)
