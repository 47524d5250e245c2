"""Positive braid words, closure bookkeeping, and 3-braid normal forms.

Conventions used throughout the package:

- Artin generators are 1-based: letter ``i`` swaps strand positions ``i`` and
  ``i + 1``.  Words contain positive generators only.
- Strands are drawn vertically, oriented downward, and numbered left to
  right.  Letters act left-to-right on strand positions, so the permutation
  of a word is the composite of its transpositions read in word order.  (The
  composition order is a convention of this package; either choice gives the
  same cycle structure.)
- A 3-braid word is *reduced* when it is a concatenation of blocks
  ``sigma_1^a sigma_2^b`` with every ``a >= 2`` and ``b >= 1``.  Words that
  cannot reach this shape collapse, after destabilization, to a torus word
  ``sigma_1^n`` on two strands or to the unknot.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from enum import Enum


class BraidError(ValueError):
    """Base class for invalid braid input."""


class BraidParseError(BraidError):
    """The input text does not match the braid grammar."""


class NotAKnotError(BraidError):
    """The braid closure has more than one component."""

    def __init__(self, components: int):
        self.components = components
        super().__init__(f"closure has {components} components; expected a knot")


class NormalizationError(BraidError):
    """The rewriting search did not reach a reduced form within its budget."""


@dataclass(frozen=True)
class BraidWord:
    """A positive braid word on ``strand_count`` strands."""

    strand_count: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strand_count < 2:
            raise BraidError(f"strand count must be >= 2, got {self.strand_count}")
        if not self.letters:
            raise BraidError("braid word must contain at least one letter")
        for pos, letter in enumerate(self.letters):
            if not 1 <= letter <= self.strand_count - 1:
                raise BraidError(
                    f"letter {pos + 1} is sigma_{letter}, outside 1..{self.strand_count - 1}"
                )

    def __str__(self):
        return f"w={self.strand_count}: " + " ".join(f"s{i}" for i in self.letters)

    @property
    def letter_count(self) -> int:
        return len(self.letters)


_TOKEN = re.compile(r"s(\d+)|\(|\)|\^(\d+)|\S")


def parse_braid(text: str) -> BraidWord:
    """Parse the braid grammar ``w=<int>: s1^7 s2^2 (s1 s2)^3 ...``.

    Tokens are ``s<i>`` or parenthesized groups, each optionally followed by
    ``^<k>`` with ``k >= 1``.  Powers are expanded into plain letters.
    """
    head, sep, body = text.partition(":")
    if not sep:
        raise BraidParseError("missing ':' after strand-count header")
    m = re.fullmatch(r"\s*w\s*=\s*(\d+)\s*", head)
    if not m:
        raise BraidParseError(f"malformed header {head!r}; expected 'w=<int>:'")
    strand_count = int(m.group(1))

    tokens: list[tuple[str, int]] = []
    for tok in _TOKEN.finditer(body):
        text_tok = tok.group(0)
        if tok.group(1) is not None:
            tokens.append(("gen", int(tok.group(1))))
        elif text_tok == "(":
            tokens.append(("open", 0))
        elif text_tok == ")":
            tokens.append(("close", 0))
        elif tok.group(2) is not None:
            tokens.append(("pow", int(tok.group(2))))
        else:
            raise BraidParseError(f"malformed token {text_tok!r}")

    def parse_group(pos: int, top: bool) -> tuple[list[int], int]:
        letters: list[int] = []
        while pos < len(tokens):
            kind, value = tokens[pos]
            if kind == "gen":
                unit = [value]
                pos += 1
            elif kind == "open":
                unit, pos = parse_group(pos + 1, False)
                if pos >= len(tokens) or tokens[pos][0] != "close":
                    raise BraidParseError("unbalanced '('")
                pos += 1
            elif kind == "close":
                if top:
                    raise BraidParseError("unbalanced ')'")
                return letters, pos
            else:
                raise BraidParseError("'^' must follow a generator or group")
            if pos < len(tokens) and tokens[pos][0] == "pow":
                exponent = tokens[pos][1]
                if exponent < 1:
                    raise BraidParseError(f"exponent must be >= 1, got {exponent}")
                unit = unit * exponent
                pos += 1
            letters.extend(unit)
        return letters, pos

    letters, _ = parse_group(0, True)
    if not letters:
        raise BraidParseError("empty braid word")
    for letter in letters:
        if not 1 <= letter <= strand_count - 1:
            raise BraidParseError(
                f"generator s{letter} out of range for {strand_count} strands"
            )
    return BraidWord(strand_count, tuple(letters))


def strand_permutation(braid: BraidWord) -> tuple[int, ...]:
    """Image of each start position under the braid, 0-based."""
    perm = list(range(braid.strand_count))
    for pos in range(braid.strand_count):
        cur = pos
        for letter in braid.letters:
            if cur == letter - 1:
                cur = letter
            elif cur == letter:
                cur = letter - 1
        perm[pos] = cur
    return tuple(perm)


def permutation_cycles(perm: tuple[int, ...]) -> list[list[int]]:
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = []
        cur = start
        while not seen[cur]:
            seen[cur] = True
            cycle.append(cur)
            cur = perm[cur]
        cycles.append(cycle)
    return cycles


def closure_component_count(braid: BraidWord) -> int:
    """Number of components of the braid closure (cycles of the permutation)."""
    return len(permutation_cycles(strand_permutation(braid)))


def cycle_type(braid: BraidWord) -> tuple[int, ...]:
    """Sorted cycle lengths of the closure permutation (a conjugacy invariant)."""
    return tuple(sorted(len(c) for c in permutation_cycles(strand_permutation(braid))))


# ---------------------------------------------------------------------------
# 3-braid normal form

@dataclass(frozen=True)
class Blocks:
    """Reduced form ``sigma_1^a_1 sigma_2^b_1 ... sigma_1^a_k sigma_2^b_k``.

    ``pairs[i] = (a, b)`` records the exponents of the i-th block; every
    ``a >= 2`` and ``b >= 1``.
    """

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.pairs:
            raise BraidError("block list must be non-empty")
        for a, b in self.pairs:
            if a < 2 or b < 1:
                raise BraidError(f"block ({a},{b}) violates a>=2, b>=1")

    @property
    def block_count(self) -> int:
        return len(self.pairs)

    @property
    def sigma1_total(self) -> int:
        return sum(a for a, _ in self.pairs)

    @property
    def sigma2_total(self) -> int:
        return sum(b for _, b in self.pairs)

    def word(self) -> BraidWord:
        letters: list[int] = []
        for a, b in self.pairs:
            letters.extend([1] * a)
            letters.extend([2] * b)
        return BraidWord(3, tuple(letters))

    def rotated(self, shift: int) -> Blocks:
        shift %= len(self.pairs)
        return Blocks(self.pairs[shift:] + self.pairs[:shift])

    def __str__(self):
        return "".join(f"(s1^{a} s2^{b})" for a, b in self.pairs)


@dataclass(frozen=True)
class ReducedTorus:
    """A word that destabilizes to ``sigma_1^n`` on two strands, n odd >= 3."""

    n: int

    def __post_init__(self):
        if self.n < 3:
            raise BraidError(f"torus exponent must be >= 3, got {self.n}")
        if self.n % 2 == 0:
            raise BraidError(f"sigma_1^{self.n} closes to a 2-component link")

    def word(self) -> BraidWord:
        return BraidWord(2, (1,) * self.n)

    def __str__(self):
        return f"torus(2,{self.n})"


@dataclass(frozen=True)
class Unknot:
    def __str__(self):
        return "unknot"


NormalizedThreeBraid = Blocks | ReducedTorus | Unknot


class BraidClass(Enum):
    TYPE_A = "typeA"
    TYPE_B = "typeB"
    TYPE_C = "typeC"
    REDUCED_TORUS = "reducedTorus"
    UNKNOT = "unknot"


def blocks_from_letters(letters: tuple[int, ...]) -> tuple[tuple[int, int], ...] | None:
    """Read off block exponents when ``letters`` is literally in reduced shape."""
    runs: list[tuple[int, int]] = []
    for letter in letters:
        if runs and runs[-1][0] == letter:
            runs[-1] = (letter, runs[-1][1] + 1)
        else:
            runs.append((letter, 1))
    if len(runs) % 2 != 0 or not runs:
        return None
    pairs = []
    for i in range(0, len(runs), 2):
        (gen_a, a), (gen_b, b) = runs[i], runs[i + 1]
        if gen_a != 1 or gen_b != 2 or a < 2 or b < 1:
            return None
        pairs.append((a, b))
    return tuple(pairs)


def block_rotation(letters: tuple[int, ...]) -> tuple[int, tuple[tuple[int, int], ...]] | None:
    """Smallest rotation putting ``letters`` in reduced shape, if any."""
    for r in range(len(letters)):
        pairs = blocks_from_letters(letters[r:] + letters[:r])
        if pairs is not None:
            return r, pairs
    return None


def _rewrite_neighbors(state: tuple[int, tuple[int, ...]]):
    """One-step rewriting moves: rotation, braid relation, destabilization."""
    strands, letters = state
    n = len(letters)
    if n > 1:
        yield (strands, letters[1:] + letters[:1])
    for i in range(n - 2):
        x, y = letters[i], letters[i + 1]
        if letters[i + 2] == x and x != y:
            yield (strands, letters[:i] + (y, x, y) + letters[i + 3:])
    if strands >= 3:
        top = strands - 1
        if letters.count(top) == 1:
            yield (strands - 1, tuple(l for l in letters if l != top))
        if letters.count(1) == 1:
            yield (strands - 1, tuple(l - 1 for l in letters if l != 1))


def normalize_3braid(braid: BraidWord, max_depth: int | None = None) -> NormalizedThreeBraid:
    """Rewrite a positive 3-braid knot into reduced form.

    Breadth-first search over cyclic rotation, the braid relation, and
    destabilization of a generator occurring exactly once.  Raises
    ``NormalizationError`` when the depth bound (default ``10 * letters``) is
    exhausted, rather than guessing.
    """
    if braid.strand_count != 3:
        raise BraidError(f"expected a 3-braid, got {braid.strand_count} strands")
    components = closure_component_count(braid)
    if components != 1:
        raise NotAKnotError(components)
    if max_depth is None:
        max_depth = 10 * braid.letter_count

    def terminal(state: tuple[int, tuple[int, ...]]) -> NormalizedThreeBraid | None:
        strands, letters = state
        if strands == 2:
            n = len(letters)
            if n == 1:
                return Unknot()
            return ReducedTorus(n)
        rotation = block_rotation(letters)
        if rotation is not None:
            _, pairs = rotation
            if len(pairs) == 1 and pairs[0][1] == 1:
                return None  # lone sigma_2: destabilize instead
            return Blocks(pairs)
        return None

    start = (braid.strand_count, braid.letters)
    found = terminal(start)
    if found is not None:
        return found
    queue: deque[tuple[tuple[int, tuple[int, ...]], int]] = deque([(start, 0)])
    visited = {start}
    while queue:
        state, depth = queue.popleft()
        if depth >= max_depth:
            continue
        for nxt in _rewrite_neighbors(state):
            if nxt in visited:
                continue
            found = terminal(nxt)
            if found is not None:
                return found
            visited.add(nxt)
            queue.append((nxt, depth + 1))
    raise NormalizationError(
        f"no reduced form within depth {max_depth} for {braid}"
    )


def classify(normal: NormalizedThreeBraid) -> BraidClass:
    """Sort a normalized 3-braid knot into the five construction classes."""
    if isinstance(normal, Unknot):
        return BraidClass.UNKNOT
    if isinstance(normal, ReducedTorus):
        return BraidClass.REDUCED_TORUS
    pairs = normal.pairs
    if len(pairs) == 1:
        a, b = pairs[0]
        if b == 1:
            raise BraidError("single block with b=1 destabilizes; normalize first")
        if a % 2 == 0 or b % 2 == 0:
            raise BraidError(f"closure of single block ({a},{b}) is not a knot")
        return BraidClass.TYPE_A
    if len(pairs) == 2 and pairs[0][1] == 1 and pairs[1][1] == 1:
        return BraidClass.TYPE_B
    return BraidClass.TYPE_C


def schema_block_rotation(normal: Blocks) -> int:
    """Block rotation applied before building the two-block construction.

    A two-block word that is not ``b_1 = b_2 = 1`` must start with a block
    whose sigma_2 run has length >= 2; longer words are used as-is.
    """
    pairs = normal.pairs
    if len(pairs) == 2 and pairs[0][1] == 1 and pairs[1][1] >= 2:
        return 1
    return 0


# ---------------------------------------------------------------------------
# Genus bookkeeping

@dataclass(frozen=True)
class GenusData:
    """Euler characteristic and genus of the fiber surface of a knot."""

    euler_characteristic: int
    genus: int
    two_g_minus_one: int

    def __post_init__(self):
        if self.euler_characteristic != 1 - 2 * self.genus:
            raise BraidError("euler characteristic disagrees with genus")
        if self.two_g_minus_one != 2 * self.genus - 1:
            raise BraidError("2g-1 disagrees with genus")


def genus_3braid(normal: NormalizedThreeBraid) -> GenusData:
    """Fiber genus from the reduced form: chi = 3 - (c1 + c2)."""
    if isinstance(normal, Unknot):
        return GenusData(1, 0, -1)
    if isinstance(normal, ReducedTorus):
        g = (normal.n - 1) // 2
        return GenusData(2 - normal.n, g, 2 * g - 1)
    total = normal.sigma1_total + normal.sigma2_total
    chi = 3 - total
    if chi % 2 == 0:
        raise BraidError(f"even letter total {total}: closure is not a knot")
    g = (1 - chi) // 2
    return GenusData(chi, g, 2 * g - 1)


# ---------------------------------------------------------------------------
# 1-bridge braids

@dataclass(frozen=True)
class OneBridgeBraid:
    """Parameters (w, b, t) of the braid (s_b ... s_1)(s_{w-1} ... s_1)^t."""

    w: int
    b: int
    t: int

    def __post_init__(self):
        if self.w == 3:
            raise BraidError("there are no 1-bridge braids on 3 strands")
        if self.w < 4:
            raise BraidError(f"strand count must be >= 4, got {self.w}")
        if not 1 <= self.b <= self.w - 2:
            raise BraidError(f"bridge width must satisfy 1 <= b <= {self.w - 2}, got {self.b}")
        if self.t < 1:
            raise BraidError(f"twist number must be >= 1, got {self.t}")

    def __str__(self):
        return f"K({self.w},{self.b},{self.t})"


def braid_of_1bridge(params: OneBridgeBraid) -> BraidWord:
    """Expand the defining word: b + (w-1)t letters on w strands."""
    bridge = list(range(params.b, 0, -1))
    twist = list(range(params.w - 1, 0, -1))
    return BraidWord(params.w, tuple(bridge + twist * params.t))


def genus_1bridge(params: OneBridgeBraid) -> GenusData:
    """Fiber genus of a 1-bridge braid knot.

    Both routes are computed and compared: the band count gives
    chi = w - ((w-1)t + b), and the closed form gives
    g = (wt - w - t + b + 1)/2.  Parameters whose closure is a link are
    rejected (the formulas only agree on knots).
    """
    braid = braid_of_1bridge(params)
    components = closure_component_count(braid)
    if components != 1:
        raise NotAKnotError(components)
    w, b, t = params.w, params.b, params.t
    chi = w - ((w - 1) * t + b)
    numerator = w * t - w - t + b + 1
    if numerator % 2 != 0:
        raise BraidError(f"genus formula gives non-integer for {params}")
    g = numerator // 2
    data = GenusData(chi, g, 2 * g - 1)
    return data
