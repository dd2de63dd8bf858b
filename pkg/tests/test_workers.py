import json

from chordlab.schemas import RunConfig
from chordlab.utils.output import render, resolve_output_path
from chordlab.workers import queue
from chordlab.workers.figure_jobs import run_figure_job
from chordlab.workers.pool import map_ordered
from fractions import Fraction


def _square(x):
    return x * x


def test_map_ordered_keeps_task_order():
    assert map_ordered(_square, range(6), threads=1) == [0, 1, 4, 9, 16, 25]
    assert map_ordered(_square, range(6), threads=3) == [0, 1, 4, 9, 16, 25]
    assert map_ordered(_square, [], threads=2) == []


def test_render_csv_keeps_big_integers_and_fractions():
    config = RunConfig(subcommand="crystal")
    text = render([{"n": 40, "value": 2 ** 100, "mean": Fraction(155, 68), "x": float("nan")}], config)

    assert text == f"n,value,mean,x\n40,{2 ** 100},155/68,\n"


def test_render_json_envelope():
    config = RunConfig(subcommand="spectra", k_min=2, k_max=3, output_format="json")
    payload = json.loads(render([{"k": 2, "claimed": {"2": 1}}], config, extra_meta={"note": "x"}))

    assert payload["meta"]["subcommand"] == "spectra"
    assert payload["meta"]["config"]["k_max"] == 3
    assert payload["meta"]["note"] == "x"
    assert payload["data"] == [{"k": 2, "claimed": '{"2": 1}'}]


def test_relative_output_paths_use_the_output_dir(monkeypatch, tmp_path):
    monkeypatch.setattr("chordlab.utils.output.OUTPUT_DIR", str(tmp_path))

    assert resolve_output_path(None) is None
    assert resolve_output_path("a/b.csv") == tmp_path / "a" / "b.csv"
    assert resolve_output_path("/abs/c.csv").as_posix() == "/abs/c.csv"


def test_figure_job_writes_its_series(tmp_path):
    target = tmp_path / "kmean.csv"
    config = RunConfig(subcommand="figure", target="kmean", output_path=str(target))

    path = run_figure_job("kmean", {"n_min": 4, "n_max": 5}, config.model_dump())

    assert path == str(target)
    assert target.read_text().splitlines()[0].startswith("n,exactMean")


def test_figure_queue_is_none_without_redis(monkeypatch):
    monkeypatch.setattr(queue, "REDIS_URL", "redis://127.0.0.1:1/0")
    monkeypatch.setattr(queue, "_redis_conn", None)
    monkeypatch.setattr(queue, "_figure_queue", None)

    assert queue.get_figure_queue() is None
