"""Independent brute-force verifiers.

Everything here recomputes a result of the main pipeline from scratch:
``rewrite_bfs`` searches the rewriting graph itself and validates every move
against closure invariants; ``chord_crossing_oracle`` decides chord crossings
by a direct quadratic alternation scan on raw circle positions;
``exhaustive_cusp_search`` enumerates the whole cusp-assignment space and
looks for anything beating the published schema; ``mis_bruteforce``
enumerates subsets.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, product

from .braid_core import (
    Blocks,
    BraidError,
    BraidWord,
    NormalizationError,
    NormalizedThreeBraid,
    NotAKnotError,
    ReducedTorus,
    Unknot,
    block_rotation,
    cycle_type,
)
from .branched_surface import LEFT, RIGHT, UNCUSPED, CuspAssignment
from .surface_model import build_fiber_surface, product_disks


# ---------------------------------------------------------------------------
# Rewriting oracle

@dataclass(frozen=True)
class RewriteStep:
    move: str
    word: BraidWord


@dataclass(frozen=True)
class RewriteResult:
    normal: NormalizedThreeBraid
    final_word: BraidWord
    steps: tuple[RewriteStep, ...]


def _apply_move(word: BraidWord, move: str) -> BraidWord:
    letters = word.letters
    if move == "rotate":
        return BraidWord(word.strand_count, letters[1:] + letters[:1])
    if move.startswith("relation@"):
        i = int(move.split("@")[1])
        x, y = letters[i], letters[i + 1]
        if letters[i + 2] != x or x == y:
            raise BraidError(f"relation does not apply at {i}")
        return BraidWord(word.strand_count, letters[:i] + (y, x, y) + letters[i + 3:])
    if move == "destabilize_top":
        top = word.strand_count - 1
        if letters.count(top) != 1:
            raise BraidError("top generator does not occur exactly once")
        return BraidWord(word.strand_count - 1, tuple(l for l in letters if l != top))
    if move == "destabilize_bottom":
        if letters.count(1) != 1:
            raise BraidError("bottom generator does not occur exactly once")
        return BraidWord(
            word.strand_count - 1, tuple(l - 1 for l in letters if l != 1)
        )
    raise BraidError(f"unknown move {move!r}")


def _moves_of(word: BraidWord) -> list[str]:
    moves = []
    letters = word.letters
    if len(letters) > 1:
        moves.append("rotate")
    for i in range(len(letters) - 2):
        x, y = letters[i], letters[i + 1]
        if letters[i + 2] == x and x != y:
            moves.append(f"relation@{i}")
    if word.strand_count >= 3:
        if letters.count(word.strand_count - 1) == 1:
            moves.append("destabilize_top")
        if letters.count(1) == 1:
            moves.append("destabilize_bottom")
    return moves


def _verify_step(before: BraidWord, after: BraidWord, move: str):
    """Every move must preserve the closure invariants it claims to."""
    if move.startswith("destabilize"):
        # The destabilized strand leaves its cycle, keeping the component count.
        if after.strand_count != before.strand_count - 1:
            raise AssertionError(f"{move} did not drop one strand")
        if after.letter_count != before.letter_count - 1:
            raise AssertionError(f"{move} did not drop one letter")
        if len(cycle_type(before)) != len(cycle_type(after)):
            raise AssertionError(f"{move} changed the component count")
    else:
        if after.strand_count != before.strand_count:
            raise AssertionError(f"{move} changed the strand count")
        if after.letter_count != before.letter_count:
            raise AssertionError(f"{move} changed the letter count")
        if cycle_type(before) != cycle_type(after):
            raise AssertionError(f"{move} changed the closure permutation type")


def _terminal_form(word: BraidWord) -> NormalizedThreeBraid | None:
    if word.strand_count == 2:
        n = word.letter_count
        if n == 1:
            return Unknot()
        return ReducedTorus(n)
    rotation = block_rotation(word.letters)
    if rotation is not None:
        _, pairs = rotation
        if len(pairs) == 1 and pairs[0][1] == 1:
            return None
        return Blocks(pairs)
    return None


def rewrite_bfs(braid: BraidWord, max_depth: int | None = None) -> RewriteResult:
    """Search for a reduced form, recording and validating every move.

    Independent of ``normalize_3braid``: moves are re-implemented here and
    each step on the winning path is checked to preserve letter count,
    strand count, and the cycle type of the closure permutation.
    """
    if braid.strand_count != 3:
        raise BraidError(f"expected a 3-braid, got {braid.strand_count} strands")
    components = len(cycle_type(braid))
    if components != 1:
        raise NotAKnotError(components)
    if max_depth is None:
        max_depth = 10 * braid.letter_count

    start = braid
    parents: dict[BraidWord, tuple[BraidWord, str] | None] = {start: None}
    queue: deque[tuple[BraidWord, int]] = deque([(start, 0)])
    goal = _terminal_form(start)
    goal_word = start if goal is not None else None
    while goal_word is None and queue:
        word, depth = queue.popleft()
        if depth >= max_depth:
            continue
        for move in _moves_of(word):
            nxt = _apply_move(word, move)
            if nxt in parents:
                continue
            parents[nxt] = (word, move)
            form = _terminal_form(nxt)
            if form is not None:
                goal, goal_word = form, nxt
                break
            queue.append((nxt, depth + 1))
    if goal_word is None:
        raise NormalizationError(
            f"no reduced form within depth {max_depth} for {braid}"
        )

    path: list[RewriteStep] = []
    cur = goal_word
    while parents[cur] is not None:
        prev, move = parents[cur]
        path.append(RewriteStep(move, cur))
        cur = prev
    path.reverse()
    before = start
    for step in path:
        replayed = _apply_move(before, step.move)
        if replayed != step.word:
            raise AssertionError(f"move {step.move} did not replay")
        _verify_step(before, step.word, step.move)
        before = step.word

    final_word = goal_word
    if isinstance(goal, Blocks):
        # Canonical report: rotate to the first block boundary.
        rotation = block_rotation(goal_word.letters)
        shift = rotation[0]
        for _ in range(shift):
            nxt = _apply_move(final_word, "rotate")
            _verify_step(final_word, nxt, "rotate")
            path.append(RewriteStep("rotate", nxt))
            final_word = nxt
    return RewriteResult(goal, final_word, tuple(path))


# ---------------------------------------------------------------------------
# Exhaustive cusp-assignment search

@dataclass(frozen=True)
class SearchReport:
    word: BraidWord
    examined: int
    sink_free: int
    best_k: int
    witnesses: tuple[str, ...]  # compact assignment strings achieving best_k
    schema_cusping: str | None
    schema_k: int | None
    schema_is_witness: bool
    counterexamples: tuple[str, ...]  # sink-free assignments with k > schema_k
    overcautious: tuple[str, ...]  # assignments rejected only via non-disk sectors


class SearchBudgetError(BraidError):
    """The assignment space exceeds the configured budget."""


def exhaustive_cusp_search(
    braid: BraidWord,
    budget: int = 12,
    schema: CuspAssignment | None = None,
    witness_cap: int = 16,
) -> SearchReport:
    """Enumerate every cusp assignment and compare against the schema.

    Letters without a product disk are forced uncusped, so the space is
    {left, right, uncusped} over the letters owning disks, enumerated in
    lexicographic order.  Reports the best carried bound among sink-disk-free
    assignments; any assignment beating the schema is recorded loudly rather
    than asserted away.
    """
    if braid.letter_count > budget:
        raise SearchBudgetError(
            f"word has {braid.letter_count} letters, budget is {budget}"
        )
    from .branched_surface import propagate_cusps, sector_decomposition, sector_shapes, sink_disk_check
    from .surface_model import ChordLayout, standardize
    from .train_track import linked_pairs, max_unlinked, maximal_endpoints

    surface = build_fiber_surface(braid)
    standardized, _ = standardize(surface, product_disks(surface))
    available = sorted(d.letter for d in standardized)
    by_letter = {d.letter: d for d in standardized}

    examined = 0
    sink_free = 0
    best_k = 0
    witnesses: list[str] = []
    flagged_nondisk: list[str] = []
    results: dict[str, tuple[bool, int]] = {}
    # The sector shapes and circle coordinates depend only on which letters
    # are cusped, so enumerate subsets first and left/right choices inside.
    for chosen_mask in product((False, True), repeat=len(available)):
        chosen = [j for j, used in zip(available, chosen_mask) if used]
        selected = [by_letter[j] for j in chosen]
        layout = ChordLayout(surface, selected)
        shapes = sector_shapes(surface, selected, layout)
        for sides in product((LEFT, RIGHT), repeat=len(chosen)):
            entries = [UNCUSPED] * braid.letter_count
            for j, side in zip(chosen, sides):
                entries[j - 1] = side
            assignment = CuspAssignment(braid, tuple(entries))
            examined += 1
            cusped = propagate_cusps(assignment, selected)
            sectors = sector_decomposition(
                surface, selected, cusped, layout=layout, shapes=shapes
            )
            report = sink_disk_check(sectors)
            free = report.sink_disk_free
            if free:
                boundary = maximal_endpoints(cusped, selected, layout)
                linked = linked_pairs(boundary, layout.knot_size)
                k = max_unlinked(boundary, linked)
            else:
                k = 0
            results[assignment.compact()] = (free, k)
            if free:
                sink_free += 1
                if k > best_k:
                    best_k = k
                    witnesses = [assignment.compact()]
                elif k == best_k and len(witnesses) < witness_cap:
                    witnesses.append(assignment.compact())
            else:
                flagged = {name for name, _ in report.violations}
                if flagged and not any(
                    s.name in flagged and s.is_disk for s in sectors
                ):
                    flagged_nondisk.append(assignment.compact())

    schema_compact = schema.compact() if schema else None
    schema_k = None
    schema_is_witness = False
    counterexamples: tuple[str, ...] = ()
    if schema_compact is not None:
        free, schema_k = results[schema_compact]
        schema_is_witness = free and schema_k == best_k
        if free and best_k > schema_k:
            counterexamples = tuple(
                text
                for text, (ok, k) in sorted(results.items())
                if ok and k > schema_k
            )[:witness_cap]
    return SearchReport(
        braid,
        examined,
        sink_free,
        best_k,
        tuple(witnesses),
        schema_compact,
        schema_k,
        schema_is_witness,
        counterexamples,
        tuple(flagged_nondisk[:witness_cap]),
    )




# ---------------------------------------------------------------------------
# Direct chord and independent-set oracles

def chord_crossing_oracle(
    circle_size: int, chords: list[tuple[str, int, int]]
) -> list[tuple[str, str]]:
    """All chord pairs whose endpoints alternate, by quadratic scan.

    ``chords`` holds (name, position, position) with distinct positions on a
    circle of ``circle_size`` slots.
    """
    crossing = []
    for (name_a, a1, a2), (name_b, b1, b2) in combinations(chords, 2):
        def hits(x, lo, hi):
            return (x - lo) % circle_size < (hi - lo) % circle_size and x != lo

        if hits(b1, a1, a2) != hits(b2, a1, a2):
            crossing.append(tuple(sorted((name_a, name_b))))
    return sorted(crossing)


def mis_bruteforce(letters: list[int], pairs: list[tuple[int, int]]) -> int:
    """Maximum pairwise-unlinked subset by subset enumeration (n <= 20)."""
    if len(letters) > 20:
        raise BraidError("brute-force independent set capped at 20 vertices")
    conflict = set(map(tuple, pairs))
    best = 0
    for size in range(len(letters), 0, -1):
        if size <= best:
            break
        for subset in combinations(letters, size):
            ok = True
            for pair in combinations(subset, 2):
                if tuple(sorted(pair)) in conflict:
                    ok = False
                    break
            if ok:
                best = size
                break
    return best
