import json
import math

import pytest

from chordlab.cli import main, run, run_self_tests, table_rows
from chordlab.census import count_nqb
from chordlab.constants import EXIT_CAPACITY, EXIT_OK, EXIT_TIMEOUT, EXIT_USAGE
from chordlab.schemas import RunConfig


def test_census_rnk_csv(capsys):
    code = main(["census", "rnk", "--n", "7", "--threads", "1"])

    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert out == "n,k1,k2,k3,k4,k5,k6,k7\n7,720,3024,2616,980,195,21,1\n"


def test_census_json_metadata(capsys):
    code = main(["census", "short", "--n", "3", "--format", "json", "--threads", "1"])

    assert code == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["meta"]["subcommand"] == "census"
    assert "threads" not in payload["meta"]["config"]
    assert payload["data"] == [{"n": 3, "k0": 5, "k1": 6, "k2": 3, "k3": 1}]


def test_output_is_identical_across_thread_counts(capsys):
    main(["census", "nqb", "--n", "5", "--format", "json", "--threads", "1"])
    serial = capsys.readouterr().out
    main(["census", "nqb", "--n", "5", "--format", "json", "--threads", "2"])

    assert capsys.readouterr().out == serial


def test_nqb_rows_are_indexed_by_bubble_size():
    rows = table_rows(count_nqb(2))

    assert rows[0] == {"q": 1, "b0": 0, "b1": 2}
    assert rows[-1] == {"q": 4, "b0": 1, "b1": 0}


def test_crystal_single_value(capsys):
    code = main(["crystal", "rnk", "--n", "12", "--k", "3", "--scalable"])

    assert code == EXIT_OK
    header, row = capsys.readouterr().out.strip().splitlines()
    assert header == "n,k,rnk"
    assert row.startswith("12,3,")


def test_crystal_moments_are_exact_fractions(capsys):
    code = main(["crystal", "moments", "--n", "5", "--format", "json"])

    assert code == EXIT_OK
    data = json.loads(capsys.readouterr().out)["data"][0]
    assert data["mean"] == "155/68"


@pytest.mark.slow
def test_spectra_reports(capsys):
    code = main(["spectra", "--k-min", "2", "--k-max", "12", "--format", "json"])

    assert code == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["data"]) == 55
    assert all(row["verified"] for row in payload["data"])


def test_output_file_is_written(tmp_path):
    target = tmp_path / "bridges.csv"
    code = main(["asympt", "bridges", "--n", "10", "--output", str(target)])

    assert code == EXIT_OK
    lines = target.read_text().splitlines()
    assert lines[0] == "q,eqBbar,eqBbarLimit,eqVar"
    assert len(lines) == 1 + 18


def test_asympt_model_for_one_size(capsys):
    code = main(["asympt", "model", "--n", "5", "--q", "3", "--b", "3", "--format", "json"])

    assert code == EXIT_OK
    row = json.loads(capsys.readouterr().out)["data"][0]
    assert row["b"] == 3
    assert row["logModel"] == pytest.approx(math.log(240) - 1)


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["census", "rnk", "--n", "10"], EXIT_CAPACITY),
        (["census", "bogus", "--n", "3"], EXIT_USAGE),
        (["crystal", "rnk", "--n", "3", "--k", "5"], EXIT_USAGE),
        (["asympt", "model", "--n", "5"], EXIT_USAGE),
        (["asympt", "kmoments", "--n", "3"], EXIT_USAGE),
        (["spectra", "--k-min", "5", "--k-max", "4"], EXIT_USAGE),
        (["simulate", "--n", "4", "--trials", "5", "--seed", "-1"], EXIT_USAGE),
    ],
)
def test_exit_codes(argv, expected):
    assert main(argv) == expected


def test_simulate_timeouts_exit_code():
    code = main(["simulate", "--n", "6", "--trials", "20", "--max-steps", "1", "--threads", "1"])

    assert code == EXIT_TIMEOUT


def test_simulate_within_budget(capsys):
    code = main(["simulate", "--n", "3", "--trials", "50", "--seed", "4", "--threads", "1", "--format", "json"])

    assert code == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["meta"]["summary"]["trials"] == 50
    assert payload["meta"]["config"]["seed"] == 4


def test_selftest_subset(capsys):
    code = main(["selftest", "--only", "scalable", "--only", "sequences"])

    assert code == EXIT_OK
    assert "scalable,True" in capsys.readouterr().out


@pytest.mark.slow
def test_self_test_runner_reports_every_selected_check():
    results = run_self_tests(["enumeration", "remark", "short_mean"])

    assert [r.name for r in results] == ["enumeration", "remark", "short_mean"]
    assert all(r.passed for r in results)


def test_run_accepts_a_config_directly(capsys):
    code = run(RunConfig(subcommand="crystal", target="rnk", n=4))

    assert code == EXIT_OK
    assert capsys.readouterr().out == "n,k1,k2,k3,k4\n4,6,12,6,1\n"


def test_run_reports_missing_parameters_as_usage_errors():
    assert run(RunConfig(subcommand="census", target="rnk")) == EXIT_USAGE
    assert run(RunConfig(subcommand="figure", target="kmean")) == EXIT_USAGE


def test_figure_kmean_from_the_command_line(capsys):
    code = main(["figure", "kmean", "--n-min", "4", "--n-max", "6"])

    assert code == EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == "n,exactMean,eqRefined,eqLeading,exactVar,eqVar"
