"""
Asymptotic formulas, evaluated in natural-log space.

Factorials and double factorials go through scipy's log-gamma, so values
far beyond float range (R_{n,k} at n = 1000) stay representable. Nothing
here is exact; compare against census / crystal values for trends.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, List

import numpy as np
from scipy.special import gammaln, logsumexp

from chordlab.errors import DomainError
from chordlab.schemas.estimates import BridgeMoments, ShortChordMoments
from chordlab.utils.logging_utils import logger

LOG2 = math.log(2.0)
LOGPI = math.log(math.pi)


@dataclass(frozen=True)
class LogValue:
    """sign * exp(log_abs); sign 0 means the value is zero and log_abs is -inf."""

    log_abs: float
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise DomainError("sign must be -1, 0 or +1", sign=self.sign)
        if (self.sign == 0) != (self.log_abs == -math.inf):
            raise DomainError("zero LogValue must carry log_abs = -inf", sign=self.sign)

    @classmethod
    def zero(cls) -> "LogValue":
        return cls(-math.inf, 0)

    @classmethod
    def of(cls, value: int | float) -> "LogValue":
        """Log of an exact int (any size) or a float."""
        if value == 0:
            return cls.zero()
        return cls(math.log(abs(value)), 1 if value > 0 else -1)

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    @property
    def log10(self) -> float:
        return self.log_abs / math.log(10.0)

    def __mul__(self, other: "LogValue") -> "LogValue":
        if self.is_zero or other.is_zero:
            return LogValue.zero()
        return LogValue(self.log_abs + other.log_abs, self.sign * other.sign)

    def log_ratio(self, other: "LogValue") -> float:
        """log |self / other|."""
        if other.is_zero:
            raise DomainError("ratio to a zero LogValue")
        return self.log_abs - other.log_abs

    def to_float(self) -> float:
        """Plain float, inf when out of range."""
        if self.is_zero:
            return 0.0
        try:
            return self.sign * math.exp(self.log_abs)
        except OverflowError:
            return self.sign * math.inf


def log_factorial(m: float) -> float:
    return float(gammaln(m + 1.0))


def log_double_factorial_odd(m: int) -> float:
    """log (m-1)!! for even m >= 0, via (2j-1)!! = (2j)! / (2^j j!)."""
    j = m // 2
    return log_factorial(2 * j) - j * LOG2 - log_factorial(j)


def _balls_in_bins(balls: int, bins: int) -> int:
    """Indistinguishable balls into distinguishable bins (empty bins allowed)."""
    if bins < 0 or balls < 0:
        return 0
    if bins == 0:
        return 1 if balls == 0 else 0
    return math.comb(balls + bins - 1, balls)


def _balls_in_nonempty_bins(balls: int, bins: int) -> int:
    if bins < 0 or balls < 0:
        return 0
    if bins == 0:
        return 1 if balls == 0 else 0
    return math.comb(balls - 1, bins - 1) if balls >= bins else 0


def _model_domain(n: int, q: int, b: int) -> bool:
    if n < 2:
        raise DomainError("the bubble model needs n >= 2", n=n)
    if not (0 <= b <= q <= 2 * n):
        logger.debug(f"[Model] outside 0 <= b <= q <= 2n: n={n} q={q} b={b}")
        return False
    outside = 2 * (n - 1) - q - b
    if (q - b) % 2 or outside % 2 or outside < 0:
        logger.debug(f"[Model] parity excludes n={n} q={q} b={b}")
        return False
    return True


def model_nqb(n: int, q: int, b: int) -> LogValue:
    """
    Model count of bubbles of size q with b bridges: one bubble against a
    diagram end, b bridge endpoints spread over the would-be short chords.

    Returns the zero LogValue where the model assigns no configurations.
    """
    if not _model_domain(n, q, b):
        return LogValue.zero()
    outside = 2 * (n - 1) - q
    prefix = (
        LOG2
        + log_factorial(outside) - log_factorial(outside - b)
        + log_double_factorial_odd(outside - b)
        + log_double_factorial_odd(q - b)
        - 1.0
    )
    logs = []
    for p in range(b + 1):
        ways = sum(
            _balls_in_bins(b0, q - b - p + 1) * _balls_in_nonempty_bins(b - b0, p)
            for b0 in range(b - p + 1)
        )
        if ways:
            logs.append(math.log(ways) - log_factorial(p))
    if not logs:
        return LogValue.zero()
    return LogValue(prefix + float(logsumexp(logs)))


def model_nqb_leading(n: int, q: int, b: int) -> LogValue:
    """Leading simplified form of model_nqb: q! / b! with the two pairing counts."""
    if not _model_domain(n, q, b):
        return LogValue.zero()
    s = (q + b) // 2
    h = (q - b) // 2
    value = (
        -(n - 1 - s) * LOG2 - log_factorial(n - 1 - s)
        + LOG2 + log_factorial(2 * (n - 1) - q)
        - h * LOG2 - log_factorial(h)
        + log_factorial(q) - log_factorial(b)
    )
    return LogValue(value)


def bridge_distribution_model(n: int, q: int) -> Dict[int, float]:
    """Model weights over b for a bubble of size q, normalized to sum to one."""
    logs = {b: model_nqb(n, q, b) for b in range(q + 1)}
    logs = {b: v.log_abs for b, v in logs.items() if not v.is_zero}
    if not logs:
        return {}
    total = float(logsumexp(list(logs.values())))
    return {b: math.exp(v - total) for b, v in logs.items()}


# ---------------------------------------------------------------------------
# Bridge moments
# ---------------------------------------------------------------------------

def _check_q(n: int, q: int):
    if n < 2:
        raise DomainError("bridge moments need n >= 2", n=n)
    if not 1 <= q <= 2 * n:
        raise DomainError("q must lie in [1, 2n]", n=n, q=q)


def mean_bridges(n: int, q: int) -> float:
    """q (2(n-1) - q) / (2(n-1))."""
    _check_q(n, q)
    return q * (2 * (n - 1) - q) / (2 * (n - 1))


def mean_bridges_limit(n: int, q: int) -> float:
    """q (2n - q) / (2n), the large-n form; zero at q = 2n."""
    _check_q(n, q)
    return q * (2 * n - q) / (2 * n)


def var_bridges(n: int, q: int) -> float:
    """q^2 (2(n-1) - q)^2 / (4 (n-1)^3)."""
    _check_q(n, q)
    return q * q * (2 * (n - 1) - q) ** 2 / (4 * (n - 1) ** 3)


def bridge_moments(n: int, q: int) -> BridgeMoments:
    if q > 2 * (n - 1):
        raise DomainError("bridge moments are defined for q <= 2(n-1)", n=n, q=q)
    return BridgeMoments(n=n, q=q, mean=mean_bridges(n, q), variance=var_bridges(n, q))


# ---------------------------------------------------------------------------
# Crystallized diagrams
# ---------------------------------------------------------------------------

def log_rnk_asympt(n: int, k: int) -> LogValue:
    """
    log R_{n,k} ~ -1/2 log(k+1) + (n+1/2) log 2 + (k-n) + (n-k/2) log k
                  + (k/2) log pi + (n-k/2) log((n-k)/(k+1)).
    """
    if not 1 <= k < n:
        raise DomainError("need 1 <= k < n", n=n, k=k)
    half = n - k / 2
    value = (
        -0.5 * math.log(k + 1)
        + (n + 0.5) * LOG2
        + (k - n)
        + half * math.log(k)
        + (k / 2) * LOGPI
        + half * math.log((n - k) / (k + 1))
    )
    return LogValue(value)


def log_cnkq_asympt(n: int, k: int, q: int) -> LogValue:
    """Stirling form of C_{n,k,q}, for n >> k ~ q >> 1."""
    if k < 2 or q < 0 or n <= k + q:
        raise DomainError("need k >= 2, q >= 0 and n > k + q", n=n, k=k, q=q)
    power = n - q - (k + 1) / 2
    value = (
        -0.5 * math.log(k)
        + (n - q - 0.5) * LOG2
        + (k - n)
        + power * math.log(k - 1)
        + math.log(k + 1)
        + ((k - 1) / 2) * LOGPI
        + power * math.log((n - k - q) / k)
        + (0.5 + k - 2 * n + 2 * q) * math.log(2 * n - 2 * q - k - 1)
        + (-0.5 - k + 2 * n - q) * math.log(2 * n - q - k - 1)
    )
    return LogValue(value)


def kbar_leading(n: int) -> float:
    return math.sqrt(2 * n / math.log(n))


def kbar_refined(n: int) -> float:
    """sqrt(2n / log(n/pi)) - 1/2 - 1/(2 log(n/pi)); needs n >= 4."""
    if n < 4:
        raise DomainError("the refined mean needs log(n/pi) > 0, i.e. n >= 4", n=n)
    log_ratio = math.log(n / math.pi)
    return math.sqrt(2 * n / log_ratio) - 0.5 - 1 / (2 * log_ratio)


def short_chord_moments(n: int) -> ShortChordMoments:
    refined = kbar_refined(n)
    leading = kbar_leading(n)
    return ShortChordMoments(
        n=n,
        kbar_leading=leading,
        kbar_refined=refined,
        variance=refined ** 3 / (2 * n),
        qbar=2 * n / leading,
    )


def normal_curve(k_values: Iterable[int], mean: float, variance: float, peak: float) -> List[float]:
    """Gaussian in k scaled so that its largest value on k_values equals peak."""
    ks = np.asarray(list(k_values), dtype=float)
    if variance <= 0:
        raise DomainError("variance must be positive", variance=variance)
    if ks.size == 0:
        return []
    shape = np.exp(-((ks - mean) ** 2) / (2 * variance))
    return (peak * shape / shape.max()).tolist()
