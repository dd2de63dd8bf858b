import math
from collections import Counter

import numpy as np
import pytest
from scipy.stats import chisquare

from chordlab.diagram import (
    Bubble,
    Diagram,
    bridges_of,
    bubbles,
    check_enumerable,
    double_factorial,
    enumerate_diagrams,
    is_crystallized,
    sample_uniform,
    short_chords,
    total_diagrams,
    zero_gaps,
)
from chordlab.errors import CapacityError, DomainError


def test_parse_and_format_round_trip():
    d = Diagram.parse("15|23|46")

    assert d.n == 3
    assert d.mate(1) == 5
    assert d.mate(5) == 1
    assert d.chords() == [(1, 5), (2, 3), (4, 6)]
    assert str(d) == "15|23|46"
    assert Diagram.parse("1-5|2-3|4-6") == d


@pytest.mark.parametrize("partner", [(), (1, 2), (2, 1, 4), (3, 4, 2, 1)])
def test_diagram_rejects_invalid_partner_lists(partner):
    with pytest.raises(DomainError):
        Diagram(partner)


def test_from_chords_rejects_reused_vertex():
    with pytest.raises(DomainError):
        Diagram.from_chords([(1, 2), (2, 3)])


def test_total_diagrams_is_odd_double_factorial():
    assert double_factorial(-1) == 1
    assert double_factorial(7) == 105
    assert [total_diagrams(n) for n in range(1, 6)] == [1, 3, 15, 105, 945]


def test_enumeration_visits_every_diagram_once():
    diagrams = list(enumerate_diagrams(4))

    assert len(diagrams) == 105
    assert len(set(diagrams)) == 105


def test_enumeration_slices_partition_the_stream():
    sliced = [d for w in range(2, 9) for d in enumerate_diagrams(4, first_partner=w)]

    assert sliced == list(enumerate_diagrams(4))


def test_enumeration_capacity():
    with pytest.raises(DomainError):
        check_enumerable(0)
    with pytest.raises(CapacityError):
        check_enumerable(10)


def test_bubbles_and_bridges():
    d = Diagram.parse("15|23|46")
    decomposition = bubbles(d)

    assert short_chords(d) == [2]
    assert decomposition.k == 1
    assert decomposition.short_chord_positions == (2,)
    assert decomposition.bubbles == (Bubble(start=1, size=1, bridges=1), Bubble(start=4, size=3, bridges=1))
    assert bridges_of(d) == [(1, 5)]
    assert not is_crystallized(d)
    assert zero_gaps(d) == 0


def test_crystallized_diagrams_and_zero_gaps():
    assert is_crystallized(Diagram.parse("14|23"))
    assert is_crystallized(Diagram.parse("12|34"))
    assert zero_gaps(Diagram.parse("12|34")) == 3
    assert zero_gaps(Diagram.parse("14|23")) == 0


def test_diagram_without_short_chords_is_one_bubble():
    decomposition = bubbles(Diagram.parse("13|24"))

    assert decomposition.k == 0
    assert decomposition.bubbles == (Bubble(start=1, size=4, bridges=0),)


def test_sampling_is_deterministic_for_a_seed():
    a = sample_uniform(20, np.random.default_rng(42))
    b = sample_uniform(20, np.random.default_rng(42))

    assert a == b
    assert a.n == 20


def test_sampling_covers_all_small_diagrams():
    rng = np.random.default_rng(7)
    seen = {sample_uniform(2, rng) for _ in range(300)}

    assert seen == set(enumerate_diagrams(2))


def test_sampling_is_uniform_over_four_chord_diagrams():
    rng = np.random.default_rng(2024)
    counts = Counter(sample_uniform(4, rng) for _ in range(21_000))
    observed = [counts[d] for d in enumerate_diagrams(4)]

    assert len(counts) == 105
    assert sum(observed) == 21_000
    assert chisquare(observed).pvalue > 1e-4


def test_sampled_short_chord_mean_is_one():
    rng = np.random.default_rng(8)
    shorts = np.array([len(short_chords(sample_uniform(8, rng))) for _ in range(20_000)])
    se = shorts.std(ddof=1) / math.sqrt(len(shorts))

    assert abs(shorts.mean() - 1.0) <= 5 * se


def test_short_chords_and_gaps_of_all_short_diagrams():
    assert short_chords(Diagram.parse("12|34")) == [1, 3]
    assert short_chords(Diagram.parse("14|23")) == [2]
    assert zero_gaps(Diagram.parse("12|34|56")) == 4


@pytest.mark.parametrize("text", ["14|23", "12|34", "1-6|2-3|4-5|7-10|8-9|11-12"])
def test_every_chord_of_a_crystallized_diagram_is_short_or_a_bridge(text):
    d = Diagram.parse(text)

    assert is_crystallized(d)
    assert len(short_chords(d)) + len(bridges_of(d)) == d.n
