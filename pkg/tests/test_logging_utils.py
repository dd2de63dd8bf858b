import logging

import pytest

from chordlab.utils import logging_utils
from chordlab.utils.logging_utils import get_run_context, log_error, log_operation, run_context, timing_logger


def test_run_context_nests_and_resets():
    assert get_run_context() == {}

    with run_context(subcommand="census", seed=1):
        with run_context(threads=2):
            assert get_run_context() == {"subcommand": "census", "seed": 1, "threads": 2}
        assert get_run_context() == {"subcommand": "census", "seed": 1}

    assert get_run_context() == {}


def test_log_operation_includes_run_context(caplog):
    caplog.set_level(logging.INFO, logger="chordlab")

    with run_context(subcommand="spectra"):
        log_operation("spectral_reports", 12.5, k_max=4)

    record = caplog.records[-1]
    assert record.levelno == logging.INFO
    assert "'operation': 'spectral_reports'" in record.getMessage()
    assert "'subcommand': 'spectra'" in record.getMessage()


def test_slow_operations_log_a_warning(caplog, monkeypatch):
    monkeypatch.setattr(logging_utils, "SLOW_OPERATION_THRESHOLD_MS", 1)
    caplog.set_level(logging.INFO, logger="chordlab")

    log_operation("census", 50.0)

    assert caplog.records[-1].levelno == logging.WARNING
    assert "Slow operation" in caplog.records[-1].getMessage()


def test_timing_logger_logs_success_and_failure(caplog):
    caplog.set_level(logging.INFO, logger="chordlab")

    @timing_logger("double")
    def double(x):
        return 2 * x

    @timing_logger("explode")
    def explode():
        raise ValueError("boom")

    assert double(21) == 42
    assert "'status': 'ok'" in caplog.records[-1].getMessage()

    with pytest.raises(ValueError):
        explode()
    messages = [r.getMessage() for r in caplog.records]
    assert any("'status': 'failed'" in m for m in messages)
    assert "'error_type': 'ValueError'" in messages[-1]


def test_log_error_records_exception(caplog):
    try:
        raise RuntimeError("bad state")
    except RuntimeError as e:
        log_error(e, "while testing")

    record = caplog.records[-1]
    assert record.levelno == logging.ERROR
    assert "'context': 'while testing'" in record.getMessage()
    assert record.exc_info is not None
