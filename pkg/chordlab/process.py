"""
The crystallization process: random adjacent swaps of chord endpoints until
every bubble is empty.

One step picks an endpoint i of a non-short chord uniformly, picks a
neighbour j = i +/- 1 (forced at the two ends of the line), and exchanges
the line positions of the endpoints at i and j unless j belongs to a short
chord. Swaps only ever happen inside one bubble and never touch a short
chord, so short chords are never destroyed and bubble membership changes
only when a new short chord appears. The state keeps the number of chords
lying inside a bubble and recounts it only at those moments.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from chordlab.asymptotics import kbar_refined
from chordlab.config import DEBUG_CHECKS, DEFAULT_SEED, MAX_STEPS, SCALABLE_CAP, TRIAL_CHUNK
from chordlab.crystal import rnk_row
from chordlab.diagram import Diagram, sample_padded, scan_padded
from chordlab.errors import ContractViolation, DomainError
from chordlab.schemas.process import CrystallizationStats
from chordlab.utils.logging_utils import logger, timing_logger
from chordlab.workers.pool import map_ordered

_UNIFORM_BUFFER = 4096


@dataclass(frozen=True, slots=True)
class MoveRecord:
    i: int
    j: int
    applied: bool
    created_short: int = 0


@dataclass(frozen=True)
class RunOutcome:
    """Final diagram plus both step counts; timed_out runs carry the partial state."""

    diagram: Diagram
    stopping_time: int
    applied_moves: int
    timed_out: bool = False

    @property
    def final_k(self) -> int:
        return sum(1 for v, w in enumerate(self.diagram.partner, start=1) if w == v + 1)


class ProcessState:
    """Mutable diagram of one run, with its step counters and random stream."""

    def __init__(self, partner: Sequence[int], rng: np.random.Generator):
        self.p: List[int] = [0, *partner]
        self.size = len(partner)
        self.rng = rng
        self.step_count = 0
        self.applied_moves = 0
        self._buffer = np.empty(0)
        self._cursor = 0

        self.candidates: List[int] = []
        self.slot = [-1] * (self.size + 1)
        for v in range(1, self.size + 1):
            if abs(self.p[v] - v) != 1:
                self.slot[v] = len(self.candidates)
                self.candidates.append(v)
        self.internal = self._count_internal()

    @classmethod
    def from_diagram(cls, d: Diagram, rng: np.random.Generator) -> "ProcessState":
        return cls(d.partner, rng)

    @property
    def diagram(self) -> Diagram:
        return Diagram(tuple(self.p[1:]))

    @property
    def crystallized(self) -> bool:
        return self.internal == 0

    def _count_internal(self) -> int:
        _, _, _, labels = scan_padded(self.p, self.size)
        p = self.p
        return sum(
            1 for v in range(1, self.size + 1) if v < p[v] and labels[v] and labels[v] == labels[p[v]]
        )

    def _uniform(self) -> float:
        if self._cursor >= len(self._buffer):
            self._buffer = self.rng.random(_UNIFORM_BUFFER)
            self._cursor = 0
        u = self._buffer[self._cursor]
        self._cursor += 1
        return float(u)

    def _retire(self, v: int):
        """Drop v from the candidates (it just became a short-chord endpoint)."""
        at = self.slot[v]
        last = self.candidates.pop()
        if last != v:
            self.candidates[at] = last
            self.slot[last] = at
        self.slot[v] = -1

    def check(self):
        try:
            self.diagram
        except DomainError as e:
            raise ContractViolation(f"process left an invalid diagram: {e}", step=self.step_count) from e


def step(state: ProcessState) -> MoveRecord:
    """
    Attempt one move. Rejected moves leave the diagram untouched but still
    advance step_count.
    """
    if state.crystallized:
        raise ContractViolation("step called on a crystallized diagram", step=state.step_count)

    u_pick = state._uniform()
    u_side = state._uniform()
    state.step_count += 1

    candidates = state.candidates
    i = candidates[int(u_pick * len(candidates))]
    if i == 1:
        j = 2
    elif i == state.size:
        j = i - 1
    else:
        j = i - 1 if u_side < 0.5 else i + 1

    if state.slot[j] < 0:
        return MoveRecord(i=i, j=j, applied=False)

    p = state.p
    x = p[i]
    y = p[j]
    p[j] = x
    p[x] = j
    p[i] = y
    p[y] = i
    state.applied_moves += 1

    created = 0
    for a, b in ((x, j), (y, i)):
        if abs(a - b) == 1:
            state._retire(a)
            state._retire(b)
            created += 1
    if created:
        state.internal = state._count_internal()
    if DEBUG_CHECKS:
        state.check()
    return MoveRecord(i=i, j=j, applied=True, created_short=created)


def _run(state: ProcessState, max_steps: int) -> RunOutcome:
    while not state.crystallized:
        if state.step_count >= max_steps:
            logger.debug(f"[Process] timeout after {state.step_count} steps")
            return RunOutcome(state.diagram, state.step_count, state.applied_moves, timed_out=True)
        step(state)
    return RunOutcome(state.diagram, state.step_count, state.applied_moves)


def run_until_crystallized(
    d: Diagram, seed: int | np.random.SeedSequence = DEFAULT_SEED, max_steps: int = MAX_STEPS
) -> RunOutcome:
    """Run the process from d; an already crystallized d returns with stopping time 0."""
    if max_steps < 1:
        raise DomainError("max_steps must be positive", max_steps=max_steps)
    state = ProcessState.from_diagram(d, np.random.default_rng(seed))
    return _run(state, max_steps)


def _trial_chunk(task) -> List[Tuple[int, int, int, bool]]:
    """(stopping time, applied moves, final k, timed out) per trial."""
    n, seeds, max_steps = task
    results = []
    for seed_seq in seeds:
        rng = np.random.default_rng(seed_seq)
        state = ProcessState(sample_padded(n, rng)[1:], rng)
        outcome = _run(state, max_steps)
        if not outcome.timed_out and not state.crystallized:
            raise ContractViolation("run stopped on a diagram that is not crystallized", n=n)
        results.append((outcome.stopping_time, outcome.applied_moves, outcome.final_k, outcome.timed_out))
    return results


def total_variation(empirical: dict, reference: dict) -> float:
    keys = set(empirical) | set(reference)
    return 0.5 * sum(abs(empirical.get(k, 0.0) - reference.get(k, 0.0)) for k in keys)


def reference_distribution(n: int) -> dict | None:
    """R_{n,k} / sum_k R_{n,k}, or None beyond the scalable cap."""
    if n > SCALABLE_CAP:
        return None
    row = rnk_row(n)
    total = sum(row)
    return {k: r / total for k, r in enumerate(row, start=1)}


@timing_logger("experiment")
def experiment(
    n: int,
    trials: int,
    seed: int = DEFAULT_SEED,
    max_steps: int = MAX_STEPS,
    threads: int | None = None,
) -> CrystallizationStats:
    """
    Run `trials` independent processes from uniform diagrams.

    Trial t draws its start diagram and its moves from child t of
    SeedSequence(seed); trials are grouped in fixed chunks, so the stats do
    not depend on the worker count. The comparison with R_{n,k} is a report.
    """
    if n < 1:
        raise DomainError("n must be a positive integer", n=n)
    if trials < 1:
        raise DomainError("trials must be positive", trials=trials)
    if max_steps < 1:
        raise DomainError("max_steps must be positive", max_steps=max_steps)

    children = np.random.SeedSequence(seed).spawn(trials)
    tasks = [
        (n, children[start:start + TRIAL_CHUNK], max_steps)
        for start in range(0, trials, TRIAL_CHUNK)
    ]

    stopping, applied, final_k = Counter(), Counter(), Counter()
    timeouts = 0
    for chunk in map_ordered(_trial_chunk, tasks, threads):
        for steps, moves, k, timed_out in chunk:
            if timed_out:
                timeouts += 1
                continue
            stopping[steps] += 1
            applied[moves] += 1
            final_k[k] += 1
    if timeouts:
        logger.warning(f"[Process] {timeouts} of {trials} runs hit max_steps={max_steps}")

    finished = trials - timeouts
    reference = reference_distribution(n)
    tv = None
    mean_k = None
    if finished:
        empirical = {k: c / finished for k, c in final_k.items()}
        mean_k = sum(k * c for k, c in final_k.items()) / finished
        if reference is not None:
            tv = total_variation(empirical, reference)

    refined = None
    if n >= 4:
        refined = kbar_refined(n)

    return CrystallizationStats(
        n=n,
        trials=trials,
        seed=seed,
        max_steps=max_steps,
        timeouts=timeouts,
        stopping_times=dict(sorted(stopping.items())),
        applied_moves=dict(sorted(applied.items())),
        final_k=dict(sorted(final_k.items())),
        reference=reference,
        tv_distance=None if tv is None else min(1.0, tv),
        mean_final_k=mean_k,
        kbar_refined=refined,
    )


def mean_stopping_time(stats: CrystallizationStats) -> float:
    """Mean attempted steps over runs that finished; nan when none did."""
    finished = sum(stats.stopping_times.values())
    if not finished:
        return math.nan
    return sum(t * c for t, c in stats.stopping_times.items()) / finished
