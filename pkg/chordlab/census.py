"""
Exact counting tables over all diagrams, and Monte Carlo estimates where
enumeration is out of reach. This is the oracle layer the formula modules
are checked against.

The census is a map-reduce: the enumeration is split by the partner of
vertex 1, every slice is tallied independently, and the tallies are added
in slice order.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Tuple

import numpy as np

from chordlab.config import DEFAULT_SEED, MC_CHUNK
from chordlab.diagram import check_enumerable, iter_padded, partitions, sample_padded, scan_padded, total_diagrams
from chordlab.errors import DomainError, VerificationError
from chordlab.schemas.estimates import McEstimate
from chordlab.utils.logging_utils import logger, timing_logger
from chordlab.workers.pool import map_ordered

MIN_MC_SAMPLES = 10_000


@dataclass(frozen=True)
class CountTable:
    """
    Dense table of exact counts.

    ``lows`` holds the first index of each axis; ``at`` returns 0 for any
    index outside the stored range, ``row`` raises DomainError.

    Index ranges by kind:
      NQB      q in [1, 2n] x b in [0, n-1]
      SHORT    k in [0, n]
      RNK      k in [1, n]
      CNKQ     k in [1, n] x q in [0, 2n]
      BUBSIZE  q in [1, 2n]
    """

    kind: str
    n: int
    entries: tuple
    lows: Tuple[int, ...]

    def at(self, *index: int) -> int:
        node = self.entries
        for i, low in zip(index, self.lows):
            j = i - low
            if j < 0 or j >= len(node):
                return 0
            node = node[j]
        return node

    def row(self, i: int) -> tuple:
        j = i - self.lows[0]
        if not 0 <= j < len(self.entries):
            raise DomainError(f"{self.kind} row index {i} is outside the table", n=self.n, index=i)
        return self.entries[j]

    def indices(self) -> range:
        return range(self.lows[0], self.lows[0] + len(self.entries))

    def total(self) -> int:
        if len(self.lows) == 1:
            return sum(self.entries)
        return sum(sum(r) for r in self.entries)


@dataclass
class CensusTally:
    """Per-slice accumulators; merged by addition."""

    n: int
    nqb: List[List[int]] = field(default_factory=list)
    short: List[int] = field(default_factory=list)
    rnk: List[int] = field(default_factory=list)
    cnkq: List[List[int]] = field(default_factory=list)
    bubsize: List[int] = field(default_factory=list)
    diagrams: int = 0

    def __post_init__(self):
        n = self.n
        if not self.short:
            self.nqb = [[0] * n for _ in range(2 * n + 1)]
            self.short = [0] * (n + 1)
            self.rnk = [0] * (n + 1)
            self.cnkq = [[0] * (2 * n + 1) for _ in range(n + 1)]
            self.bubsize = [0] * (2 * n + 1)

    def merge(self, other: "CensusTally") -> "CensusTally":
        for q in range(2 * self.n + 1):
            self.bubsize[q] += other.bubsize[q]
            for b in range(self.n):
                self.nqb[q][b] += other.nqb[q][b]
        for k in range(self.n + 1):
            self.short[k] += other.short[k]
            self.rnk[k] += other.rnk[k]
            for q in range(2 * self.n + 1):
                self.cnkq[k][q] += other.cnkq[k][q]
        self.diagrams += other.diagrams
        return self


def _tally_slice(task: Tuple[int, int]) -> CensusTally:
    n, first_partner = task
    size = 2 * n
    tally = CensusTally(n)
    nqb, short, rnk, cnkq, bubsize = tally.nqb, tally.short, tally.rnk, tally.cnkq, tally.bubsize
    count = 0
    for p in iter_padded(n, first_partner):
        count += 1
        runs, shorts, bridges, _ = scan_padded(p, size)
        k = len(shorts)
        short[k] += 1
        crystallized = True
        for (_, q), b in zip(runs, bridges):
            nqb[q][b] += 1
            bubsize[q] += 1
            if b != q:
                crystallized = False
        if crystallized and k:
            rnk[k] += 1
            row = cnkq[k]
            for _, q in runs:
                row[q] += 1
            row[0] += k + 1 - len(runs)
    tally.diagrams = count
    return tally


_TALLIES: Dict[int, CensusTally] = {}


def _census(n: int) -> CensusTally:
    """Tally for n, from the cache filled by run_census."""
    tally = _TALLIES.get(n)
    if tally is None:
        tally = run_census(n)
    return tally


@timing_logger("census")
def run_census(n: int, threads: int | None = None) -> CensusTally:
    """Tally every diagram on n chords, one process-pool task per partner of vertex 1."""
    check_enumerable(n)
    slices = map_ordered(_tally_slice, [(n, w) for w in partitions(n)], threads)
    tally = CensusTally(n)
    for part in slices:
        tally.merge(part)
    if tally.diagrams != total_diagrams(n):
        logger.error(f"[Census] visited {tally.diagrams} diagrams, expected {total_diagrams(n)}")
        raise VerificationError("census did not visit every diagram", n=n, visited=tally.diagrams)
    _TALLIES[n] = tally
    return tally


def _freeze(rows) -> tuple:
    return tuple(tuple(r) if isinstance(r, list) else r for r in rows)


def count_nqb(n: int) -> CountTable:
    """N_{q,b}(n): bubbles of size q with exactly b bridges, over all diagrams."""
    tally = _census(n)
    return CountTable("NQB", n, _freeze(tally.nqb[1:]), (1, 0))


def count_short_distribution(n: int) -> CountTable:
    """Number of diagrams with exactly k short chords, k = 0..n."""
    return CountTable("SHORT", n, tuple(_census(n).short), (0,))


def count_rnk_bruteforce(n: int) -> CountTable:
    """Crystallized diagrams bucketed by short-chord count, k = 1..n."""
    return CountTable("RNK", n, tuple(_census(n).rnk[1:]), (1,))


def count_cnkq_bruteforce(n: int) -> CountTable:
    """Bubbles of size q (q = 0 for empty gaps) over crystallized diagrams with k short chords."""
    return CountTable("CNKQ", n, _freeze(_census(n).cnkq[1:]), (1, 0))


def bubble_size_totals(n: int) -> CountTable:
    """Total number of bubbles of size q over all diagrams."""
    return CountTable("BUBSIZE", n, tuple(_census(n).bubsize[1:]), (1,))


def short_factorial_moment(n: int, r: int) -> Fraction:
    """r-th factorial moment E[k(k-1)...(k-r+1)] of the short-chord count."""
    if r < 0:
        raise DomainError("moment order must be nonnegative", r=r)
    table = count_short_distribution(n)
    total = sum(math.perm(k, r) * table.at(k) for k in table.indices())
    return Fraction(total, total_diagrams(n))


# ---------------------------------------------------------------------------
# Vendored sequence prefixes
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def load_sequences() -> Dict[str, dict]:
    with resources.files("chordlab.data").joinpath("sequences.json").open() as fh:
        return json.load(fh)


def census_row(name: str, n: int) -> List[int]:
    """The census row that a vendored sequence describes at n."""
    if name == "A079267":
        return list(count_short_distribution(n).entries)
    if name == "A278990":
        return [count_short_distribution(n).at(0)]
    if name == "A367000":
        return list(bubble_size_totals(n).entries)
    if name == "A375504":
        return list(count_rnk_bruteforce(n).entries)
    raise DomainError(f"no census row for {name}")


def sequence_check(name: str, n: int) -> bool:
    """Compare a census row with the vendored prefix of a sequence."""
    sequences = load_sequences()
    if name not in sequences:
        raise DomainError(f"unknown sequence {name}")
    expected = sequences[name]["rows"].get(str(n))
    if expected is None:
        raise DomainError(f"{name} has no vendored row at n={n}")
    return census_row(name, n) == expected


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------

def _mc_chunk(task) -> Dict[int, List[int]]:
    """Per bubble size: [count, sum of bridges, sum of squared bridges]."""
    n, count, seed_seq = task
    rng = np.random.default_rng(seed_seq)
    size = 2 * n
    sums: Dict[int, List[int]] = {}
    for _ in range(count):
        p = sample_padded(n, rng)
        runs, _, bridges, _ = scan_padded(p, size)
        for (_, q), b in zip(runs, bridges):
            acc = sums.get(q)
            if acc is None:
                sums[q] = [1, b, b * b]
            else:
                acc[0] += 1
                acc[1] += b
                acc[2] += b * b
    return sums


def _estimate(n: int, q: int, samples: int, seed: int, acc: List[int] | None) -> McEstimate:
    if not acc:
        return McEstimate(n=n, q=q, seed=seed, samples=samples, bubbles=0)
    m, s1, s2 = acc
    mean = Fraction(s1, m)
    var = Fraction(s2 * m - s1 * s1, m * (m - 1)) if m > 1 else Fraction(0)
    return McEstimate(
        n=n,
        q=q,
        seed=seed,
        samples=samples,
        bubbles=m,
        mean_bridges=float(mean),
        var_bridges=float(var),
        standard_error=math.sqrt(var / m),
    )


@timing_logger("mc_bridge_profile")
def mc_bridge_profile(
    n: int, samples: int, seed: int = DEFAULT_SEED, threads: int | None = None
) -> Dict[int, McEstimate]:
    """
    Sample uniform diagrams and estimate bridge statistics for every bubble size at once.

    Work is cut into fixed chunks of CHORDLAB_MC_CHUNK samples, each with its own
    child seed, so the estimate depends only on (n, samples, seed).
    """
    if n < 1:
        raise DomainError("n must be a positive integer", n=n)
    if samples < MIN_MC_SAMPLES:
        raise DomainError(f"Monte Carlo needs at least {MIN_MC_SAMPLES} samples", samples=samples)

    chunks = math.ceil(samples / MC_CHUNK)
    children = np.random.SeedSequence(seed).spawn(chunks)
    tasks = [
        (n, min(MC_CHUNK, samples - i * MC_CHUNK), children[i])
        for i in range(chunks)
    ]
    totals: Dict[int, List[int]] = {}
    for part in map_ordered(_mc_chunk, tasks, threads):
        for q, (c, s1, s2) in part.items():
            acc = totals.setdefault(q, [0, 0, 0])
            acc[0] += c
            acc[1] += s1
            acc[2] += s2

    return {q: _estimate(n, q, samples, seed, totals.get(q)) for q in range(1, 2 * n + 1)}


def mc_bridge_stats(
    n: int, q: int, samples: int, seed: int = DEFAULT_SEED, threads: int | None = None
) -> McEstimate:
    """Bridge mean and unbiased variance over all sampled bubbles of size q."""
    if not 1 <= q <= 2 * n:
        raise DomainError("q must lie in [1, 2n]", n=n, q=q)
    return mc_bridge_profile(n, samples, seed, threads)[q]
