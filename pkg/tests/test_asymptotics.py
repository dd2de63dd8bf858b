import math

import pytest

from chordlab.asymptotics import (
    LogValue,
    bridge_distribution_model,
    bridge_moments,
    kbar_leading,
    kbar_refined,
    log_cnkq_asympt,
    log_rnk_asympt,
    mean_bridges,
    mean_bridges_limit,
    model_nqb,
    model_nqb_leading,
    normal_curve,
    short_chord_moments,
    var_bridges,
)
from chordlab.crystal import cnkq_formula, rnk_row
from chordlab.errors import DomainError
from chordlab.figures import exact_bridge_moments


def test_log_value_handles_huge_integers_and_zero():
    big = LogValue.of(10 ** 400)

    assert big.log10 == pytest.approx(400)
    assert big.to_float() == math.inf
    assert LogValue.of(0).is_zero
    assert (big * LogValue.zero()).is_zero
    assert LogValue.of(-8).sign == -1
    assert LogValue.of(8).log_ratio(LogValue.of(2)) == pytest.approx(math.log(4))

    with pytest.raises(DomainError):
        LogValue(1.0, 0)


def test_model_count_for_a_fully_bridged_bubble():
    assert model_nqb(5, 3, 3).to_float() == pytest.approx(240 / math.e)
    assert model_nqb_leading(5, 3, 3).to_float() == pytest.approx(120)


@pytest.mark.parametrize("n, q, b", [(5, 3, 2), (5, 3, 4), (5, 9, 1), (4, 2, 1)])
def test_model_is_zero_off_its_domain(n, q, b):
    assert model_nqb(n, q, b).is_zero


def test_model_needs_two_chords():
    with pytest.raises(DomainError):
        model_nqb(1, 1, 1)


def test_bridge_distribution_is_normalized():
    weights = bridge_distribution_model(20, 6)

    assert sum(weights.values()) == pytest.approx(1.0)
    assert all(b % 2 == 0 for b in weights)


def test_bridge_moment_formulas():
    assert mean_bridges(100, 100) == pytest.approx(4900 / 99)
    assert var_bridges(100, 99) == pytest.approx(24.75)
    assert mean_bridges_limit(100, 200) == 0
    assert max(range(1, 199), key=lambda q: mean_bridges(100, q)) == 99


def test_bridge_moments_domain():
    moments = bridge_moments(10, 9)

    assert moments.mean == pytest.approx(mean_bridges(10, 9))
    with pytest.raises(DomainError):
        bridge_moments(10, 19)
    with pytest.raises(DomainError):
        mean_bridges(10, 0)


def test_short_chord_mean_approximations():
    assert kbar_leading(10 ** 6) == pytest.approx(math.sqrt(2e6 / math.log(1e6)))
    assert kbar_leading(10 ** 6) == pytest.approx(380.48, abs=0.01)
    assert kbar_refined(250) == pytest.approx(10.074, abs=0.005)

    with pytest.raises(DomainError):
        kbar_refined(3)


def test_short_chord_moments():
    m = short_chord_moments(1000)

    assert m.qbar * m.kbar_leading == pytest.approx(2000)
    assert m.variance == pytest.approx(m.kbar_refined ** 3 / 2000)
    assert m.std == pytest.approx(math.sqrt(m.variance))

    with pytest.raises(DomainError):
        short_chord_moments(2)


@pytest.mark.slow
def test_rnk_asymptotic_tracks_exact_values():
    # k = 1 reduces to Stirling for (n-1)!
    assert log_rnk_asympt(200, 1).log_ratio(LogValue.of(math.factorial(199))) == pytest.approx(0, abs=0.01)
    assert log_rnk_asympt(7, 2).to_float() == pytest.approx(3024, rel=0.02)

    exact = rnk_row(200)
    ratio = log_rnk_asympt(200, 10).log_ratio(LogValue.of(exact[9]))
    assert abs(ratio) < 0.05 * math.log(exact[9])


def test_asymptotic_domains():
    with pytest.raises(DomainError):
        log_rnk_asympt(5, 5)
    with pytest.raises(DomainError):
        log_cnkq_asympt(10, 1, 2)
    with pytest.raises(DomainError):
        log_cnkq_asympt(10, 5, 5)
    assert not log_cnkq_asympt(100, 5, 10).is_zero


def test_normal_curve_peak():
    curve = normal_curve(range(1, 11), 4.2, 2.0, 3.0)

    assert max(curve) == pytest.approx(3.0)
    assert curve.index(max(curve)) == 3
    assert normal_curve([], 1.0, 1.0, 1.0) == []
    with pytest.raises(DomainError):
        normal_curve([1], 1.0, 0.0, 1.0)


def test_rnk_asymptotic_declines_past_the_mean():
    n = 500
    start = math.ceil(kbar_refined(n)) + 2
    logs = [log_rnk_asympt(n, k).log_abs for k in range(start, n)]

    assert all(a > b for a, b in zip(logs, logs[1:]))


def test_mean_bridges_tracks_exact_means_for_large_bubbles():
    worst = []
    for n in range(3, 8):
        moments = exact_bridge_moments(n)
        errors = []
        for q in range(n, 2 * n - 2):
            mean, _ = moments.get(q, (0, 0))
            if mean:
                errors.append(abs(float(mean) - mean_bridges(n, q)) / float(mean))
        worst.append(max(errors))

    assert worst[0] == pytest.approx(0.25)
    assert all(e <= 0.25 + 1e-12 for e in worst)
    assert all(a >= b for a, b in zip(worst, worst[1:]))


def test_cnkq_asymptotic_against_exact_value():
    exact = cnkq_formula(50, 5, 10)

    assert abs(log_cnkq_asympt(50, 5, 10).log_ratio(LogValue.of(exact))) < 0.5
