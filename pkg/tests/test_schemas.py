from fractions import Fraction

import pytest
from pydantic import ValidationError

from chordlab.schemas import (
    CrystallizationStats,
    McEstimate,
    RunConfig,
    SpectrumReport,
)


def test_run_config_defaults_and_normalization():
    config = RunConfig(subcommand="census", target="rnk", n=5, output_format=" JSON ", threads=4)

    assert config.seed == 1729
    assert config.output_format == "json"
    assert config.for_output() == {
        "subcommand": "census",
        "target": "rnk",
        "n": 5,
        "seed": 1729,
        "max_steps": 10_000_000,
        "scalable": False,
        "exact": False,
        "timeout_budget": 0,
        "only": [],
        "output_format": "json",
    }


@pytest.mark.parametrize(
    "values",
    [
        {"subcommand": "plot"},
        {"subcommand": "census", "output_format": "xml"},
        {"subcommand": "spectra", "k_min": 6, "k_max": 4},
        {"subcommand": "crystal", "n": 3, "k": 4},
        {"subcommand": "simulate", "seed": 2 ** 64},
        {"subcommand": "simulate", "trials": 0},
    ],
)
def test_run_config_rejects_invalid_values(values):
    with pytest.raises(ValidationError):
        RunConfig(**values)


def test_crystallization_stats_mass_check():
    stats = CrystallizationStats(
        n=2, trials=3, seed=1, max_steps=10, timeouts=1,
        stopping_times={1: 2}, applied_moves={1: 2}, final_k={1: 1, 2: 1},
    )
    assert stats.timeouts == 1

    with pytest.raises(ValidationError):
        CrystallizationStats(
            n=2, trials=3, seed=1, max_steps=10,
            stopping_times={1: 2}, applied_moves={1: 2}, final_k={1: 2},
        )


def test_empty_monte_carlo_estimate_carries_no_mean():
    empty = McEstimate(n=3, q=5, seed=1, samples=10, bubbles=0)
    assert empty.is_empty

    with pytest.raises(ValidationError):
        McEstimate(n=3, q=5, seed=1, samples=10, bubbles=0, mean_bridges=1.0)
    with pytest.raises(ValidationError):
        McEstimate(n=3, q=5, seed=1, samples=10, bubbles=4)


def test_spectrum_report_serializes_fractions():
    report = SpectrumReport(matrix_name="M_inverse", k=2, claimed={}, verified=True, value=Fraction(-3, 2))

    assert report.model_dump()["value"] == "-3/2"
    assert report.model_dump_json().count('"-3/2"') == 1
