import math
from fractions import Fraction

import pytest

from chordlab.asymptotics import kbar_refined
from chordlab.census import count_cnkq_bruteforce, count_rnk_bruteforce
from chordlab.crystal import (
    EdgeWeighting,
    bubble_size_moments,
    cnkq_formula,
    cnkq_table,
    exact_k_moments,
    psi,
    psi_terms,
    remark_identity_check,
    rnk_formula,
    rnk_row,
    rnk_scalable,
    rnk_table,
    structural_laws,
)
from chordlab.errors import CapacityError, DomainError


def test_psi_small_values():
    assert psi(4, 1) == 24
    assert psi(2, 2) == 12
    assert psi(0, 3) == 1
    assert psi(0, 0) == 1
    assert psi(3, 0) == 0


def test_psi_term_count_and_cap(monkeypatch):
    assert psi_terms(2, 2) == 6
    monkeypatch.setattr("chordlab.crystal.PSI_MAX_TERMS", 5)
    with pytest.raises(CapacityError):
        psi(2, 2)


def test_edge_weighting_term():
    weighting = EdgeWeighting(k=2, p=(1, 1, 0))

    assert weighting.w == (2, 1, 1)
    assert weighting.term() == 2

    with pytest.raises(DomainError):
        EdgeWeighting(k=2, p=(1, 1))


@pytest.mark.parametrize("n", range(1, 8))
def test_rnk_formula_matches_census(n):
    census = count_rnk_bruteforce(n)

    assert [rnk_formula(n, k) for k in range(1, n + 1)] == list(census.entries)


@pytest.mark.parametrize("n", range(1, 11))
def test_scalable_path_matches_formula(n):
    expected = [rnk_formula(n, k) for k in range(1, n + 1)]

    assert [rnk_scalable(n, k) for k in range(1, n + 1)] == expected
    assert rnk_row(n) == expected


@pytest.mark.slow
@pytest.mark.parametrize("n", range(1, 13))
def test_structural_laws(n):
    laws = structural_laws(n)

    assert all(laws.values())
    assert ("penultimate_is_triangular" in laws) == (n >= 2)


def test_structural_laws_on_scalable_path():
    row = rnk_row(40)

    assert row[0] == math.factorial(39)
    assert row[-1] == 1
    assert row[-2] == 40 * 39 // 2


@pytest.mark.parametrize("n", range(1, 7))
def test_cnkq_formula_matches_census(n):
    census = count_cnkq_bruteforce(n)
    formula = cnkq_table(n)

    for k in range(1, n + 1):
        for q in range(0, 2 * n + 1):
            assert formula.at(k, q) == census.at(k, q), (n, k, q)


def test_cnkq_is_zero_past_the_support():
    assert cnkq_formula(4, 2, 3) == 0
    assert cnkq_formula(2, 1, 1) == 2
    assert cnkq_formula(2, 2, 0) == 3


@pytest.mark.parametrize("n", range(1, 9))
def test_remark_identity(n):
    for k in range(1, n + 1):
        assert remark_identity_check(n, k)


@pytest.mark.parametrize("n", range(1, 7))
def test_bubble_sizes_cover_the_non_short_vertices(n):
    for k in range(1, n + 1):
        total = sum(q * cnkq_formula(n, k, q) for q in range(2 * n + 1))
        assert total == 2 * (n - k) * rnk_formula(n, k)


def test_exact_k_moments():
    mean3, var3 = exact_k_moments(3)
    mean5, _ = exact_k_moments(5)

    assert mean3 == Fraction(11, 6)
    assert var3 == Fraction(2 + 12 + 9, 6) - Fraction(11, 6) ** 2
    assert mean5 == Fraction(155, 68)


def test_bubble_size_moments_for_two_chords():
    assert bubble_size_moments(2) == Fraction(2, 5)


def test_rnk_table_paths_agree():
    assert rnk_table(8).entries == rnk_table(8, scalable=True).entries


def test_scalable_values_for_seven_chords():
    assert rnk_scalable(7, 4) == 980
    assert rnk_row(7) == [720, 3024, 2616, 980, 195, 21, 1]


def test_scalable_row_reaches_a_hundred_and_fifty():
    row = rnk_row(150)

    assert len(row) == 150
    assert row[0] == math.factorial(149)
    assert row[-2] == 150 * 149 // 2
    assert rnk_scalable(150, 12) == row[11]


@pytest.mark.slow
def test_scalable_values_at_two_hundred_fifty():
    row = rnk_row(250)
    mean, _ = exact_k_moments(250)

    assert [rnk_scalable(250, k) for k in range(1, 41)] == row[:40]
    assert row[0] == math.factorial(249)
    assert abs(float(mean) - kbar_refined(250)) < 1.0


def test_cnkq_formula_past_the_term_cap(monkeypatch):
    census = count_cnkq_bruteforce(5)
    monkeypatch.setattr("chordlab.crystal.PSI_MAX_TERMS", 2)

    for k in range(1, 6):
        for q in range(0, 11):
            assert cnkq_formula(5, k, q) == census.at(k, q), (k, q)


def test_cnkq_formula_at_fifty_chords():
    value = cnkq_formula(50, 5, 10)

    assert value > 0
    assert value % 6 == 0


def test_domain_and_capacity_errors(monkeypatch):
    with pytest.raises(DomainError):
        rnk_formula(3, 0)
    with pytest.raises(DomainError):
        rnk_formula(3, 4)
    with pytest.raises(DomainError):
        cnkq_formula(3, 1, -1)

    monkeypatch.setattr("chordlab.crystal.SCALABLE_CAP", 10)
    with pytest.raises(CapacityError):
        rnk_row(11)
