from fractions import Fraction

import pytest

from chordlab.asymptotics import mean_bridges
from chordlab.errors import DomainError
from chordlab.figures import build_series, kmean_series, rs_agreement, rs_series


def test_exact_bridge_moment_series():
    rows = build_series("bridge-moments", n=4, exact=True)

    assert [r["q"] for r in rows] == list(range(1, 9))
    assert set(rows[0]) == {"q", "exactMean", "eqBbar", "exactVar", "eqVar"}
    assert rows[2]["eqBbar"] == pytest.approx(mean_bridges(4, 3))


def test_monte_carlo_series_requires_samples():
    with pytest.raises(DomainError):
        build_series("bridge-moments", n=4)


def test_monte_carlo_series_columns():
    rows = build_series("bridge-moments", n=4, samples=10_000, seed=5, threads=1)

    assert set(rows[0]) == {"q", "mcMean", "mcSE", "eqBbar", "mcVar", "eqVar", "bubbles"}
    assert sum(r["bubbles"] for r in rows) > 0


def test_kmean_series_starts_at_four():
    rows = kmean_series(1, 6)

    assert [r["n"] for r in rows] == [4, 5, 6]
    assert rows[1]["exactMean"] == pytest.approx(float(Fraction(155, 68)))

    with pytest.raises(DomainError):
        kmean_series(4, 3)


def test_rs_series_uses_the_exact_row():
    rows = rs_series(7)

    assert [r["exact"] for r in rows] == [720, 3024, 2616, 980, 195, 21, 1]
    assert max(r["exactNormalized"] for r in rows) == 1.0
    assert max(r["normalCurve"] for r in rows) == pytest.approx(1.0)
    assert rows[-1]["asymptNormalized"] is None

    with pytest.raises(DomainError):
        rs_series(3)


def test_rs_agreement_summary():
    summary = rs_agreement(7)

    assert summary["argmax"] == 2
    assert summary["supDistance"] >= 0


def test_unknown_figure():
    with pytest.raises(DomainError):
        build_series("histogram")


@pytest.mark.slow
def test_rs_argmax_near_refined_mean_at_sixty():
    summary = rs_agreement(60)

    assert abs(summary["argmax"] - round(summary["kbarRefined"])) <= 1
    assert summary["supDistance"] <= 0.15
