"""
Linear chord diagrams: representation, enumeration, sampling and the
short chord / bubble / bridge classification.

Vertices are 1-based positions on a line of 2n vertices. A diagram stores
its chords symmetrically: ``partner[v - 1]`` is the vertex matched to ``v``.

The hot loops (census, Monte Carlo) work on "padded" partner lists, where
index 0 is unused and ``p[v]`` is the partner of ``v``. The public
functions accept ``Diagram`` values and delegate to the same helpers.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from chordlab.config import ENUMERATION_CAP
from chordlab.errors import CapacityError, DomainError


@dataclass(frozen=True, slots=True)
class Diagram:
    """A perfect matching on 2n linearly ordered vertices."""

    partner: Tuple[int, ...]

    def __post_init__(self):
        size = len(self.partner)
        if size == 0 or size % 2:
            raise DomainError("a diagram needs an even, positive number of vertices", size=size)
        for v, w in enumerate(self.partner, start=1):
            if not 1 <= w <= size or w == v or self.partner[w - 1] != v:
                raise DomainError("partner must be a fixed-point-free involution", vertex=v)

    @property
    def n(self) -> int:
        return len(self.partner) // 2

    def mate(self, v: int) -> int:
        return self.partner[v - 1]

    def chords(self) -> List[Tuple[int, int]]:
        """Chords as (left, right) pairs ordered by left endpoint."""
        return [(v, w) for v, w in enumerate(self.partner, start=1) if v < w]

    def padded(self) -> List[int]:
        return [0, *self.partner]

    @classmethod
    def from_chords(cls, pairs: Sequence[Tuple[int, int]]) -> "Diagram":
        size = 2 * len(pairs)
        partner = [0] * size
        for a, b in pairs:
            if not (1 <= a <= size and 1 <= b <= size) or a == b:
                raise DomainError(f"invalid chord ({a}, {b})", size=size)
            if partner[a - 1] or partner[b - 1]:
                raise DomainError(f"vertex reused by chord ({a}, {b})")
            partner[a - 1] = b
            partner[b - 1] = a
        return cls(tuple(partner))

    @classmethod
    def parse(cls, text: str) -> "Diagram":
        """Parse ``"14|23"`` (single-digit vertices) or ``"1-4|2-3"``."""
        pairs = []
        for token in text.strip().split("|"):
            token = token.strip()
            if "-" in token:
                left, _, right = token.partition("-")
            elif len(token) == 2:
                left, right = token[0], token[1]
            else:
                raise DomainError(f"cannot parse chord {token!r}")
            try:
                pairs.append((int(left), int(right)))
            except ValueError as e:
                raise DomainError(f"cannot parse chord {token!r}") from e
        return cls.from_chords(pairs)

    def __str__(self) -> str:
        if len(self.partner) <= 9:
            return "|".join(f"{a}{b}" for a, b in self.chords())
        return "|".join(f"{a}-{b}" for a, b in self.chords())


@dataclass(frozen=True, slots=True)
class Bubble:
    start: int
    size: int
    bridges: int


@dataclass(frozen=True, slots=True)
class BubbleDecomposition:
    bubbles: Tuple[Bubble, ...]
    short_chord_positions: Tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.short_chord_positions)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def double_factorial(m: int) -> int:
    """m!! with the convention (-1)!! = 0!! = 1."""
    result = 1
    while m > 1:
        result *= m
        m -= 2
    return result


def total_diagrams(n: int) -> int:
    return double_factorial(2 * n - 1)


def check_enumerable(n: int):
    if n < 1:
        raise DomainError("n must be a positive integer", n=n)
    if n > ENUMERATION_CAP:
        raise CapacityError(
            f"exhaustive enumeration is capped at n={ENUMERATION_CAP}", n=n, cap=ENUMERATION_CAP
        )


def partitions(n: int) -> List[int]:
    """Possible partners of vertex 1; each one selects an independent slice of the stream."""
    return list(range(2, 2 * n + 1))


def iter_padded(n: int, first_partner: int | None = None) -> Iterator[List[int]]:
    """
    Yield every diagram on n chords as a padded partner list.

    The same list object is mutated and yielded again; copy it to keep it.
    Order: the lowest unmatched vertex is matched to each larger unmatched
    vertex in ascending order, recursively.
    """
    check_enumerable(n)
    size = 2 * n
    p = [0] * (size + 1)

    def place(v: int) -> Iterator[List[int]]:
        while v <= size and p[v]:
            v += 1
        if v > size:
            yield p
            return
        for w in range(v + 1, size + 1):
            if not p[w]:
                p[v] = w
                p[w] = v
                yield from place(v + 1)
                p[v] = 0
                p[w] = 0

    if first_partner is None:
        yield from place(1)
        return
    if not 2 <= first_partner <= size:
        raise DomainError("first_partner must lie in [2, 2n]", first_partner=first_partner)
    p[1] = first_partner
    p[first_partner] = 1
    yield from place(2)


def enumerate_diagrams(n: int, first_partner: int | None = None) -> Iterator[Diagram]:
    """Every one of the (2n-1)!! diagrams exactly once, in a deterministic order."""
    for p in iter_padded(n, first_partner):
        yield Diagram(tuple(p[1:]))


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

def sample_padded(n: int, rng: np.random.Generator) -> List[int]:
    """Uniform diagram as a padded partner list (see sample_uniform)."""
    size = 2 * n
    free = list(range(1, size + 1))
    # offsets[i] is uniform on [1, len(free) - 1] at step i
    offsets = rng.integers(1, np.arange(size, 0, -2))
    p = [0] * (size + 1)
    for offset in offsets.tolist():
        w = free.pop(offset)
        v = free.pop(0)
        p[v] = w
        p[w] = v
    return p


def sample_uniform(n: int, rng: np.random.Generator) -> Diagram:
    """
    Uniformly random diagram: repeatedly match the first unmatched vertex to
    a uniformly chosen other unmatched vertex. Deterministic for a seeded rng.
    """
    if n < 1:
        raise DomainError("n must be a positive integer", n=n)
    return Diagram(tuple(sample_padded(n, rng)[1:]))


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

def scan_padded(p: Sequence[int], size: int):
    """
    One pass over a padded partner list.

    Returns (runs, shorts, bridges, labels): runs are (start, length) of the
    maximal non-empty stretches between short chords, shorts are the left
    endpoints of short chords, bridges[i] is the bridge count of runs[i] and
    labels[v] is the 1-based run index of v (0 on short-chord vertices).
    """
    labels = [0] * (size + 1)
    runs = []
    shorts = []
    v = 1
    start = 1
    while v <= size:
        if p[v] == v + 1:
            if v > start:
                runs.append((start, v - start))
            shorts.append(v)
            v += 2
            start = v
        else:
            labels[v] = len(runs) + 1
            v += 1
    if start <= size:
        runs.append((start, size + 1 - start))

    bridges = [0] * len(runs)
    for v in range(1, size + 1):
        r = labels[v]
        if r and labels[p[v]] != r:
            bridges[r - 1] += 1
    return runs, shorts, bridges, labels


def short_chords(d: Diagram) -> List[int]:
    """Left endpoints v of all chords (v, v+1), ascending."""
    return [v for v, w in enumerate(d.partner, start=1) if w == v + 1]


def bubbles(d: Diagram) -> BubbleDecomposition:
    """Non-empty bubbles with their bridge counts, and the short chord positions."""
    runs, shorts, bridges, _ = scan_padded(d.padded(), 2 * d.n)
    return BubbleDecomposition(
        bubbles=tuple(
            Bubble(start=start, size=length, bridges=b) for (start, length), b in zip(runs, bridges)
        ),
        short_chord_positions=tuple(shorts),
    )


def is_crystallized(d: Diagram) -> bool:
    """True iff no chord has both endpoints inside one bubble."""
    return all(b.bridges == b.size for b in bubbles(d).bubbles)


def zero_gaps(d: Diagram) -> int:
    """
    Empty stretches between consecutive short chords and at the two ends.

    k short chords leave k + 1 stretches; the non-empty ones are the bubbles.
    """
    decomposition = bubbles(d)
    return decomposition.k + 1 - len(decomposition.bubbles)


def bridges_of(d: Diagram) -> List[Tuple[int, int]]:
    """Chords that are a bridge of at least one bubble."""
    _, _, _, labels = scan_padded(d.padded(), 2 * d.n)
    return [(v, w) for v, w in d.chords() if labels[v] != labels[w]]
