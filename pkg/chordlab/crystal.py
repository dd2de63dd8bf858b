"""
Exact counts of crystallized diagrams.

Two independent paths to R_{n,k}:

- ``rnk_formula``: the composition sum psi(n - k, k) over bridge
  multiplicities on the edges of the complete graph K_{k+1}.
- ``rnk_scalable``: slot sizes w_1 + ... + w_{k+1} = 2(n - k) between the
  short chords, perfect matchings with no chord inside a slot counted by
  inclusion-exclusion. Summing over the slot sizes leaves one binomial per
  term and the coefficients of a power of D(z) = sum_j (2j-1)!! z^j, which
  follow from the previous power in linear time. A full row costs O(n^2)
  big-integer operations.

Every value here is an exact Python int or Fraction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Tuple

from chordlab.census import CountTable
from chordlab.config import PSI_MAX_TERMS, SCALABLE_CAP
from chordlab.errors import CapacityError, DomainError
from chordlab.utils.logging_utils import logger, timing_logger
from chordlab.workers.pool import map_ordered

# Composition sums above this many terms are split across worker processes
PSI_PARALLEL_TERMS = 2_000_000

_FACTORIALS: List[int] = [1]


def factorials(m: int) -> List[int]:
    """Memoized table 0!, 1!, ..., m! (shared, do not mutate)."""
    while len(_FACTORIALS) <= m:
        _FACTORIALS.append(_FACTORIALS[-1] * len(_FACTORIALS))
    return _FACTORIALS


def complete_graph_edges(k: int) -> List[Tuple[int, int]]:
    """Edges of K_{k+1} in lexicographic order of vertex pairs."""
    return list(combinations(range(k + 1), 2))


@dataclass(frozen=True)
class EdgeWeighting:
    """Bridge multiplicities p on the edges of K_{k+1} and the induced bubble sizes w = B p."""

    k: int
    p: Tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise DomainError("k must be at least 1", k=self.k)
        if len(self.p) != self.k * (self.k + 1) // 2 or min(self.p, default=0) < 0:
            raise DomainError("p needs one nonnegative entry per edge of K_{k+1}", k=self.k)

    @property
    def w(self) -> Tuple[int, ...]:
        w = [0] * (self.k + 1)
        for (a, b), m in zip(complete_graph_edges(self.k), self.p):
            w[a] += m
            w[b] += m
        return tuple(w)

    def term(self) -> int:
        """prod w_j! / prod p_e!, always an integer."""
        fact = factorials(2 * sum(self.p))
        num = math.prod(fact[x] for x in self.w)
        return num // math.prod(fact[x] for x in self.p)


# ---------------------------------------------------------------------------
# Composition sum
# ---------------------------------------------------------------------------

def psi_terms(N: int, k: int) -> int:
    """Number of compositions of N into k(k+1)/2 nonnegative parts."""
    if k == 0:
        return 1 if N == 0 else 0
    edges = k * (k + 1) // 2
    return math.comb(N + edges - 1, edges - 1)


def _psi_slice(task: Tuple[int, int, int]) -> int:
    """Partial psi over the compositions whose first part equals `first`."""
    N, k, first = task
    edges = complete_graph_edges(k)
    last = len(edges) - 1
    fact = factorials(2 * N)
    w = [0] * (k + 1)
    total = 0

    def visit(e: int, remaining: int, den: int):
        nonlocal total
        a, b = edges[e]
        if e == last:
            w[a] += remaining
            w[b] += remaining
            total += math.prod(fact[x] for x in w) // (den * fact[remaining])
            w[a] -= remaining
            w[b] -= remaining
            return
        for m in range(remaining + 1):
            visit(e + 1, remaining - m, den * fact[m])
            w[a] += 1
            w[b] += 1
        w[a] -= remaining + 1
        w[b] -= remaining + 1

    a, b = edges[0]
    if last == 0:
        if first != N:
            return 0
        return fact[N] * fact[N] // fact[N]
    w[a] = w[b] = first
    visit(1, N - first, fact[first])
    return total


def psi(N: int, k: int, threads: int | None = None) -> int:
    """
    Sum over compositions p of N into E = k(k+1)/2 parts of prod w_j! / prod p_i!.

    Conventions: psi(N, 0) = [N = 0] and psi(0, k) = 1.
    Raises CapacityError when the composition count exceeds CHORDLAB_PSI_MAX_TERMS.
    """
    if N < 0 or k < 0:
        raise DomainError("psi needs N >= 0 and k >= 0", N=N, k=k)
    if k == 0:
        return 1 if N == 0 else 0
    if N == 0:
        return 1

    terms = psi_terms(N, k)
    if terms > PSI_MAX_TERMS:
        raise CapacityError(
            f"psi({N}, {k}) has {terms} terms, cap is {PSI_MAX_TERMS}; use rnk_scalable",
            N=N, k=k, terms=terms,
        )

    tasks = [(N, k, first) for first in range(N + 1)]
    if terms < PSI_PARALLEL_TERMS:
        return sum(_psi_slice(t) for t in tasks)
    logger.info(f"[Psi] splitting {terms} terms into {len(tasks)} slices")
    return sum(map_ordered(_psi_slice, tasks, threads))


def _check_nk(n: int, k: int):
    if not 1 <= k <= n:
        raise DomainError("need 1 <= k <= n", n=n, k=k)


def rnk_formula(n: int, k: int, threads: int | None = None) -> int:
    """R_{n,k}: crystallized diagrams on n chords with exactly k short chords."""
    _check_nk(n, k)
    return psi(n - k, k, threads)


def cnkq_formula(n: int, k: int, q: int, threads: int | None = None) -> int:
    """
    C_{n,k,q}: bubbles of size q summed over crystallized diagrams with k short chords.

    q = 0 counts the empty stretches between short chords and at the ends.
    """
    _check_nk(n, k)
    if q < 0:
        raise DomainError("q must be nonnegative", q=q)
    if n - k - q < 0:
        return 0
    fact = factorials(2 * n)
    falling = fact[2 * n - k - q - 1] // fact[2 * n - k - 2 * q - 1]
    return (k + 1) * falling * _psi_any_size(n - k - q, k - 1, threads)


def _psi_any_size(N: int, k: int, threads: int | None = None) -> int:
    """psi(N, k), switching to R_{N+k,k} on the scalable path past the term cap."""
    if k == 0 or N == 0 or psi_terms(N, k) <= PSI_MAX_TERMS:
        return psi(N, k, threads)
    logger.info(f"[Psi] psi({N}, {k}) is over the term cap, using the scalable path")
    return rnk_scalable(N + k, k)


def remark_identity_check(n: int, k: int) -> bool:
    """(k + 2) R_{n,k} == C_{n+1,k+1,0}: one extra short chord adds an empty stretch."""
    _check_nk(n, k)
    return (k + 2) * rnk_formula(n, k) == cnkq_formula(n + 1, k + 1, 0)


# ---------------------------------------------------------------------------
# Scalable path
# ---------------------------------------------------------------------------

def _odd_double_factorials(m: int) -> List[int]:
    """(2j - 1)!! for j = 0..m."""
    out = [1]
    for j in range(1, m + 1):
        out.append(out[-1] * (2 * j - 1))
    return out


def _next_power(prev: List[int], c: int, degree: int) -> List[int]:
    """
    Coefficients of D^c up to z^degree from those of D^{c-1}, where
    D(z) = sum_j (2j-1)!! z^j.

    D satisfies 2 z^2 D' = (1 - z) D - 1, hence
    c f_J = (c + 2(J - 1)) f_{J-1} + c g_J with f = D^c, g = D^{c-1}.
    """
    f = [prev[0]]
    for J in range(1, degree + 1):
        f.append(prev[J] + (c + 2 * (J - 1)) * f[-1] // c)
    return f


def _alternating_sum(powers: List[int], N: int, k: int, odd: List[int]) -> int:
    """sum_J (-1)^J (2N - 2J - 1)!! C(2N + k, k + 2J) [z^J] D^{k+1}."""
    total = 0
    for J in range(N + 1):
        term = odd[N - J] * math.comb(2 * N + k, k + 2 * J) * powers[J]
        total += -term if J & 1 else term
    return total


def _check_scalable(n: int):
    if n < 1:
        raise DomainError("n must be a positive integer", n=n)
    if n > SCALABLE_CAP:
        raise CapacityError(
            f"scalable R_{{n,k}} is capped at n={SCALABLE_CAP}", n=n, cap=SCALABLE_CAP
        )


def rnk_scalable(n: int, k: int) -> int:
    """
    R_{n,k} with N = n - k, by inclusion-exclusion over J chords forced inside
    the k + 1 slots between short chords. Spreading 2N points over the slots
    with J such chords has C(2N + k, k + 2J) [z^J] D^{k+1} weighted choices.
    """
    _check_nk(n, k)
    _check_scalable(n)
    N = n - k
    odd = _odd_double_factorials(N)
    powers = [1] + [0] * N
    for c in range(1, k + 2):
        powers = _next_power(powers, c, N)
    return _alternating_sum(powers, N, k, odd)


@timing_logger("rnk_row")
def rnk_row(n: int) -> List[int]:
    """
    [R_{n,1}, ..., R_{n,n}] in one pass: D^{k+1} is derived from D^k and
    truncated at the degree n - k that R_{n,k} reads.
    """
    _check_scalable(n)
    odd = _odd_double_factorials(n)
    powers = odd[:n]
    row = []
    for k in range(1, n + 1):
        N = n - k
        powers = _next_power(powers, k + 1, N)
        row.append(_alternating_sum(powers, N, k, odd))
    return row


def rnk_table(n: int, scalable: bool = False) -> CountTable:
    """R_{n,k} for k = 1..n as a RNK table, from the formula or the scalable path."""
    if scalable:
        values = rnk_row(n)
    else:
        if n < 1:
            raise DomainError("n must be a positive integer", n=n)
        values = [rnk_formula(n, k) for k in range(1, n + 1)]
    return CountTable("RNK", n, tuple(values), (1,))


def cnkq_table(n: int) -> CountTable:
    """C_{n,k,q} for k = 1..n, q = 0..2n from the closed form."""
    if n < 1:
        raise DomainError("n must be a positive integer", n=n)
    rows = tuple(
        tuple(cnkq_formula(n, k, q) for q in range(2 * n + 1)) for k in range(1, n + 1)
    )
    return CountTable("CNKQ", n, rows, (1, 0))


# ---------------------------------------------------------------------------
# Derived statistics
# ---------------------------------------------------------------------------

def exact_k_moments(n: int) -> Tuple[Fraction, Fraction]:
    """Mean and variance of k under the distribution proportional to R_{n,k}."""
    row = rnk_row(n)
    total = sum(row)
    s1 = sum(k * r for k, r in enumerate(row, start=1))
    s2 = sum(k * k * r for k, r in enumerate(row, start=1))
    mean = Fraction(s1, total)
    return mean, Fraction(s2, total) - mean * mean


def structural_laws(n: int, scalable: bool = False) -> Dict[str, bool]:
    """
    R_{n,1} = (n-1)!, R_{n,n} = 1 and R_{n,n-1} = T_{n-1} (triangular number).

    The last law is reported only for n >= 2.
    """
    row = rnk_table(n, scalable).entries
    laws = {
        "first_is_factorial": row[0] == math.factorial(n - 1),
        "last_is_one": row[n - 1] == 1,
    }
    if n >= 2:
        laws["penultimate_is_triangular"] = row[n - 2] == n * (n - 1) // 2
    return laws


def bubble_size_moments(n: int) -> Fraction:
    """Mean bubble size over all stretches (empty ones included) of crystallized diagrams."""
    table = cnkq_table(n)
    weighted = sum(q * table.at(k, q) for k in table.indices() for q in range(2 * n + 1))
    return Fraction(weighted, table.total())
