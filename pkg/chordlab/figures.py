"""
Data series behind the three plots: bridge moments against bubble size,
mean short-chord count against n, and the R_{n,k} profile against k.

Each builder returns flat rows sharing an index column, ready for the
CSV / JSON writers. Plot rendering is left to the consumer.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List

from chordlab.asymptotics import (
    LogValue,
    kbar_leading,
    kbar_refined,
    log_rnk_asympt,
    mean_bridges,
    normal_curve,
    var_bridges,
)
from chordlab.census import count_nqb, mc_bridge_profile
from chordlab.config import DEFAULT_SEED
from chordlab.crystal import exact_k_moments, rnk_row
from chordlab.errors import DomainError
from chordlab.utils.logging_utils import timing_logger


def exact_bridge_moments(n: int) -> Dict[int, tuple]:
    """Exact (mean, variance) of the bridge count per bubble size, from the census."""
    table = count_nqb(n)
    moments = {}
    for q in table.indices():
        row = table.row(q)
        total = sum(row)
        if not total:
            continue
        mean = Fraction(sum(b * c for b, c in enumerate(row)), total)
        second = Fraction(sum(b * b * c for b, c in enumerate(row)), total)
        moments[q] = (mean, second - mean * mean)
    return moments


@timing_logger("figure_bridge_moments")
def bridge_moments_series(
    n: int,
    samples: int | None = None,
    seed: int = DEFAULT_SEED,
    threads: int | None = None,
    exact: bool = False,
) -> List[dict]:
    """Columns q, mcMean, mcSE, eqBbar, mcVar, eqVar (exactMean / exactVar with exact=True)."""
    if n < 2:
        raise DomainError("bridge moments need n >= 2", n=n)
    rows = []
    if exact:
        moments = exact_bridge_moments(n)
        for q in range(1, 2 * n + 1):
            mean, var = moments.get(q, (None, None))
            rows.append({
                "q": q,
                "exactMean": None if mean is None else float(mean),
                "eqBbar": mean_bridges(n, q),
                "exactVar": None if var is None else float(var),
                "eqVar": var_bridges(n, q),
            })
        return rows

    if samples is None:
        raise DomainError("Monte Carlo series need --samples (or --exact)")
    profile = mc_bridge_profile(n, samples, seed, threads)
    for q in range(1, 2 * n + 1):
        est = profile[q]
        rows.append({
            "q": q,
            "mcMean": est.mean_bridges,
            "mcSE": est.standard_error,
            "eqBbar": mean_bridges(n, q),
            "mcVar": est.var_bridges,
            "eqVar": var_bridges(n, q),
            "bubbles": est.bubbles,
        })
    return rows


@timing_logger("figure_kmean")
def kmean_series(n_min: int, n_max: int) -> List[dict]:
    """Exact mean/variance of k per n next to the leading and refined asymptotic means."""
    n_min = max(n_min, 4)
    if n_max < n_min:
        raise DomainError("empty n range (the refined mean needs n >= 4)", n_min=n_min, n_max=n_max)
    rows = []
    for n in range(n_min, n_max + 1):
        mean, var = exact_k_moments(n)
        rows.append({
            "n": n,
            "exactMean": float(mean),
            "eqRefined": kbar_refined(n),
            "eqLeading": kbar_leading(n),
            "exactVar": float(var),
            "eqVar": kbar_refined(n) ** 3 / (2 * n),
        })
    return rows


@timing_logger("figure_rs")
def rs_series(n: int) -> List[dict]:
    """
    R_{n,k} for k = 1..n with the asymptotic form and a normal curve, all
    divided by max_k R_{n,k}.
    """
    if n < 4:
        raise DomainError("the profile needs n >= 4", n=n)
    row = rnk_row(n)
    peak = max(row)
    log_peak = LogValue.of(peak)
    ks = list(range(1, n + 1))
    refined = kbar_refined(n)
    curve = normal_curve(ks, refined, refined ** 3 / (2 * n), 1.0)

    rows = []
    for k, exact, normal in zip(ks, row, curve):
        asympt = None
        if k < n:
            asympt = LogValue(log_rnk_asympt(n, k).log_ratio(log_peak)).to_float()
        rows.append({
            "k": k,
            "exact": exact,
            "exactNormalized": float(Fraction(exact, peak)),
            "asymptNormalized": asympt,
            "normalCurve": normal,
        })
    return rows


def rs_agreement(n: int) -> dict:
    """Argmax of R_{n,k} against round(kbarRefined) and the sup distance to the normal curve."""
    rows = rs_series(n)
    argmax = max(rows, key=lambda r: r["exact"])["k"]
    sup = max(abs(r["exactNormalized"] - r["normalCurve"]) for r in rows)
    return {"n": n, "argmax": argmax, "kbarRefined": kbar_refined(n), "supDistance": sup}


def build_series(target: str, **params) -> List[dict]:
    if target == "bridge-moments":
        return bridge_moments_series(**params)
    if target == "kmean":
        return kmean_series(**params)
    if target == "rs":
        return rs_series(**params)
    raise DomainError(f"unknown figure {target}")
