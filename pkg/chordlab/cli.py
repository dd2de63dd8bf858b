"""
Command-line entry point.

    chordlab census rnk --n 7
    chordlab spectra --k-min 2 --k-max 12
    chordlab figure bridge-moments --n 100 --samples 1000000 --seed 1

Every command validates its flags into a RunConfig and hands it to `run`.
Data goes to --output (relative to CHORDLAB_OUTPUT_DIR) or stdout; logs and
console summaries go to stderr. Exit codes: 0 ok, 1 usage, 2 capacity,
3 verification failure, 4 simulation timeouts over budget.
"""
from __future__ import annotations

import math
import sys
import time
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import click
import sentry_sdk
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from chordlab import __version__
from chordlab.asymptotics import (
    bridge_distribution_model,
    kbar_refined,
    log_cnkq_asympt,
    log_rnk_asympt,
    mean_bridges,
    mean_bridges_limit,
    model_nqb,
    model_nqb_leading,
    short_chord_moments,
    var_bridges,
)
from chordlab.census import (
    CountTable,
    bubble_size_totals,
    count_cnkq_bruteforce,
    count_nqb,
    count_rnk_bruteforce,
    count_short_distribution,
    load_sequences,
    mc_bridge_stats,
    run_census,
    sequence_check,
    short_factorial_moment,
)
from chordlab.config import DEFAULT_SEED, MAX_STEPS, SENTRY_DSN
from chordlab.constants import (
    ASYMPT_TARGETS,
    CENSUS_TABLES,
    CRYSTAL_TARGETS,
    EXIT_OK,
    EXIT_USAGE,
    FIGURE_TARGETS,
    OUTPUT_FORMATS,
)
from chordlab.crystal import (
    bubble_size_moments,
    cnkq_formula,
    cnkq_table,
    exact_k_moments,
    remark_identity_check,
    rnk_formula,
    rnk_scalable,
    rnk_table,
    structural_laws,
)
from chordlab.diagram import total_diagrams
from chordlab.errors import ChordLabError, SimulationTimeoutError, UsageError, VerificationError
from chordlab.figures import build_series
from chordlab.process import experiment, mean_stopping_time
from chordlab.schemas.run_config import RunConfig, SelfTestResult
from chordlab.spectral import spectral_reports
from chordlab.utils.logging_utils import log_error, logger, run_context
from chordlab.utils.output import write_output

console = Console(stderr=True)

_TABLES = {
    "NQB": count_nqb,
    "SHORT": count_short_distribution,
    "RNK": count_rnk_bruteforce,
    "CNKQ": count_cnkq_bruteforce,
    "BUBSIZE": bubble_size_totals,
}


def init_error_reporting():
    """Report unexpected exceptions to Sentry when SENTRY_DSN is set."""
    if SENTRY_DSN:
        sentry_sdk.init(dsn=SENTRY_DSN, traces_sample_rate=0.0, release=f"chordlab@{__version__}")


def make_config(subcommand: str, **values) -> RunConfig:
    try:
        return RunConfig(subcommand=subcommand, **values)
    except ValidationError as e:
        raise UsageError(f"invalid configuration: {e.errors()[0]['msg']}", subcommand=subcommand) from e


def require(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required here")
    return value


def table_rows(table: CountTable) -> List[dict]:
    """One row per table: n then the entries (RNK, SHORT, BUBSIZE); one row per first index otherwise."""
    if table.kind == "NQB":
        return [
            {"q": q, **{f"b{b}": v for b, v in enumerate(table.row(q))}} for q in table.indices()
        ]
    if table.kind == "CNKQ":
        return [
            {"k": k, **{f"q{q}": v for q, v in enumerate(table.row(k))}} for k in table.indices()
        ]
    prefix = "q" if table.kind == "BUBSIZE" else "k"
    return [{"n": table.n, **{f"{prefix}{i}": table.at(i) for i in table.indices()}}]


# ---------------------------------------------------------------------------
# Subcommand bodies
# ---------------------------------------------------------------------------

def _run_census(config: RunConfig):
    n = require(config.n, "--n")
    table = require(CENSUS_TABLES.get(config.target or ""), "a census table")
    # fills the tally cache with the requested worker count
    run_census(n, config.threads)
    write_output(table_rows(_TABLES[table](n)), config)


def _run_crystal(config: RunConfig):
    n = require(config.n, "--n")
    k, q = config.k, config.q
    if config.target == "rnk":
        if k is None:
            rows = table_rows(rnk_table(n, config.scalable))
        else:
            value = rnk_scalable(n, k) if config.scalable else rnk_formula(n, k, config.threads)
            rows = [{"n": n, "k": k, "rnk": value}]
    elif config.target == "cnkq":
        if k is not None and q is not None:
            rows = [{"n": n, "k": k, "q": q, "cnkq": cnkq_formula(n, k, q, config.threads)}]
        else:
            rows = table_rows(cnkq_table(n))
    elif config.target == "moments":
        mean, variance = exact_k_moments(n)
        rows = [{
            "n": n,
            "mean": mean,
            "variance": variance,
            "meanFloat": float(mean),
            "varianceFloat": float(variance),
            "kbarRefined": kbar_refined(n) if n >= 4 else None,
        }]
    else:
        raise UsageError(f"unknown crystal target {config.target}")
    write_output(rows, config)


def _run_spectra(config: RunConfig):
    k_min = config.k_min if config.k_min is not None else 2
    k_max = config.k_max if config.k_max is not None else 12
    reports = spectral_reports(k_min, k_max)
    rows = [
        {
            "k": r.k,
            "matrix": r.matrix_name,
            "claimed": {str(v): m for v, m in r.claimed.items()},
            "verified": r.verified,
            "value": r.value,
            "certificate": " ; ".join(r.certificate),
        }
        for r in reports
    ]
    write_output(rows, config)

    summary = Table(title=f"Spectral certificates, k = {k_min}..{k_max}")
    summary.add_column("k", justify="right")
    summary.add_column("matrix")
    summary.add_column("spectrum")
    summary.add_column("verified")
    for r in reports:
        spectrum = ", ".join(f"{v}^{m}" for v, m in r.claimed.items()) or str(r.value)
        summary.add_row(str(r.k), r.matrix_name, spectrum, "yes" if r.verified else "[red]NO[/red]")
    console.print(summary)

    failed = [r for r in reports if not r.verified]
    if failed:
        raise VerificationError(f"{len(failed)} of {len(reports)} certificates failed")
    console.print(f"{len(reports)} certificates verified")


def _run_asympt(config: RunConfig):
    n = require(config.n, "--n")
    k, q, b = config.k, config.q, config.b
    target = config.target
    if target == "model":
        q = require(q, "--q")
        weights = bridge_distribution_model(n, q)
        rows = []
        for bb in ([b] if b is not None else range(q + 1)):
            model = model_nqb(n, q, bb)
            leading = model_nqb_leading(n, q, bb)
            rows.append({
                "b": bb,
                "logModel": None if model.is_zero else model.log_abs,
                "logLeading": None if leading.is_zero else leading.log_abs,
                "weight": weights.get(bb, 0.0),
            })
    elif target == "bridges":
        qs = [q] if q is not None else range(1, 2 * (n - 1) + 1)
        rows = [
            {
                "q": qq,
                "eqBbar": mean_bridges(n, qq),
                "eqBbarLimit": mean_bridges_limit(n, qq),
                "eqVar": var_bridges(n, qq),
            }
            for qq in qs
        ]
    elif target == "rnk":
        rows = []
        for kk in ([k] if k is not None else range(1, n)):
            value = log_rnk_asympt(n, kk)
            rows.append({"k": kk, "logAsympt": value.log_abs, "log10Asympt": value.log10})
    elif target == "kmoments":
        m = short_chord_moments(n)
        rows = [{**m.model_dump(), "std": m.std}]
    elif target == "cnkq":
        k = require(k, "--k")
        rows = [
            {"k": k, "q": qq, "logAsympt": log_cnkq_asympt(n, k, qq).log_abs}
            for qq in ([q] if q is not None else range(0, n - k))
        ]
    else:
        raise UsageError(f"unknown asymptotic target {target}")
    write_output(rows, config)


def _run_simulate(config: RunConfig):
    n = require(config.n, "--n")
    trials = require(config.trials, "--trials")
    stats = experiment(n, trials, config.seed, config.max_steps, config.threads)
    reference = stats.reference or {}
    rows = [
        {"histogram": "final_k", "value": k, "runs": c, "reference": reference.get(k)}
        for k, c in stats.final_k.items()
    ]
    rows += [{"histogram": "stopping_time", "value": t, "runs": c} for t, c in stats.stopping_times.items()]
    rows += [{"histogram": "applied_moves", "value": t, "runs": c} for t, c in stats.applied_moves.items()]

    mean_time = mean_stopping_time(stats)
    summary = {
        "trials": stats.trials,
        "timeouts": stats.timeouts,
        "tvDistance": stats.tv_distance,
        "meanFinalK": stats.mean_final_k,
        "kbarRefined": stats.kbar_refined,
        "meanStoppingTime": None if math.isnan(mean_time) else mean_time,
    }
    write_output(rows, config, extra_meta={"summary": summary})

    table = Table(title=f"Crystallization process, n = {n}, {trials} trials")
    table.add_column("statistic")
    table.add_column("value", justify="right")
    for key, value in summary.items():
        shown = "-" if value is None else f"{value:.6g}" if isinstance(value, float) else str(value)
        table.add_row(key, shown)
    console.print(table)

    if stats.timeouts > config.timeout_budget:
        raise SimulationTimeoutError(
            f"{stats.timeouts} runs hit max_steps={config.max_steps} (budget {config.timeout_budget})",
            timeouts=stats.timeouts,
        )


def _figure_params(config: RunConfig) -> dict:
    if config.target == "bridge-moments":
        return {
            "n": require(config.n, "--n"),
            "samples": config.samples,
            "seed": config.seed,
            "threads": config.threads,
            "exact": config.exact,
        }
    if config.target == "kmean":
        return {"n_min": config.n_min or 4, "n_max": require(config.n_max, "--n-max")}
    if config.target == "rs":
        return {"n": require(config.n, "--n")}
    raise UsageError(f"unknown figure {config.target}")


def _run_figure(config: RunConfig):
    params = _figure_params(config)
    if not config.enqueue:
        write_output(build_series(config.target, **params), config)
        return

    from chordlab.workers.figure_jobs import run_figure_job
    from chordlab.workers.queue import get_figure_queue

    queue = get_figure_queue()
    if queue is None:
        raise UsageError("no figure queue reachable (is Redis running at REDIS_URL?)")
    job = queue.enqueue(run_figure_job, config.target, params, config.model_dump())
    logger.info(f"[Figure] enqueued {config.target} as job {job.id}")
    console.print(f"queued {config.target}: job {job.id}")


# ---------------------------------------------------------------------------
# Self-test suite
# ---------------------------------------------------------------------------

def _check_enumeration() -> Tuple[bool, str]:
    bad = [n for n in range(1, 9) if count_short_distribution(n).total() != total_diagrams(n)]
    return not bad, f"diagram totals for n=1..8; mismatches at {bad}"


def _check_sequences() -> Tuple[bool, str]:
    failures = []
    for name, entry in load_sequences().items():
        for n in entry["rows"]:
            if not sequence_check(name, int(n)):
                failures.append(f"{name}[{n}]")
    return not failures, f"vendored sequence rows; failures {failures}"


def _check_rnk() -> Tuple[bool, str]:
    bad = [
        (n, k) for n in range(1, 8) for k in range(1, n + 1)
        if count_rnk_bruteforce(n).at(k) != rnk_formula(n, k)
    ]
    laws = all(all(structural_laws(n).values()) for n in range(1, 13))
    return not bad and laws, f"R_(n,k) formula vs census n<=7 (mismatches {bad}); structural laws n<=12: {laws}"


def _check_scalable() -> Tuple[bool, str]:
    bad = [
        (n, k) for n in range(1, 11) for k in range(1, n + 1) if rnk_scalable(n, k) != rnk_formula(n, k)
    ]
    return not bad, f"scalable vs formula n<=10; mismatches {bad}"


def _check_cnkq() -> Tuple[bool, str]:
    bad = []
    for n in range(1, 7):
        table = count_cnkq_bruteforce(n)
        for k in range(1, n + 1):
            for q in range(0, 2 * n + 1):
                if table.at(k, q) != cnkq_formula(n, k, q):
                    bad.append((n, k, q))
    return not bad, f"C_(n,k,q) formula vs census n<=6; mismatches {bad}"


def _check_remark() -> Tuple[bool, str]:
    bad = [(n, k) for n in range(1, 9) for k in range(1, n + 1) if not remark_identity_check(n, k)]
    return not bad, f"(k+2) R_(n,k) = C_(n+1,k+1,0) for n<=8; failures {bad}"


def _check_short_mean() -> Tuple[bool, str]:
    bad = [n for n in range(1, 9) if short_factorial_moment(n, 1) != 1]
    return not bad, f"mean number of short chords is 1 for n<=8; failures {bad}"


def _check_bubble_sizes() -> Tuple[bool, str]:
    bad = []
    for n in range(1, 7):
        for k in range(1, n + 1):
            total = sum(q * cnkq_formula(n, k, q) for q in range(2 * n + 1))
            if total != 2 * (n - k) * rnk_formula(n, k):
                bad.append((n, k))
    mean = bubble_size_moments(6)
    return not bad, f"bubble sizes cover the non-short vertices for n<=6 (failures {bad}); mean size at n=6: {mean}"


def _check_spectra() -> Tuple[bool, str]:
    reports = spectral_reports(2, 12)
    failed = [(r.k, r.matrix_name) for r in reports if not r.verified]
    return not failed, f"{len(reports)} certificates for k=2..12; failed {failed}"


def _check_monte_carlo() -> Tuple[bool, str]:
    estimate = mc_bridge_stats(5, 3, 20_000, seed=DEFAULT_SEED)
    # 186 bubbles of size 3 over the 945 diagrams on 5 chords, 474 bridge endpoints among them
    exact = Fraction(474, 186)
    ok = estimate.standard_error is not None and abs(estimate.mean_bridges - float(exact)) <= 5 * estimate.standard_error
    return ok, f"n=5 q=3 Monte Carlo mean {estimate.mean_bridges:.4f} vs exact {float(exact):.4f}"


SELF_TESTS: List[Tuple[str, Callable[[], Tuple[bool, str]]]] = [
    ("enumeration", _check_enumeration),
    ("sequences", _check_sequences),
    ("rnk", _check_rnk),
    ("scalable", _check_scalable),
    ("cnkq", _check_cnkq),
    ("remark", _check_remark),
    ("short_mean", _check_short_mean),
    ("bubble_sizes", _check_bubble_sizes),
    ("spectra", _check_spectra),
    ("monte_carlo", _check_monte_carlo),
]


def run_self_tests(names: Optional[List[str]] = None) -> List[SelfTestResult]:
    results = []
    for name, check in SELF_TESTS:
        if names and name not in names:
            continue
        start = time.perf_counter()
        try:
            passed, detail = check()
        except ChordLabError as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        results.append(SelfTestResult(
            name=name, passed=passed, detail=detail, duration_ms=(time.perf_counter() - start) * 1000
        ))
    return results


def _run_selftest(config: RunConfig):
    results = run_self_tests(config.only)
    write_output([{"check": r.name, "passed": r.passed, "detail": r.detail} for r in results], config)

    table = Table(title="chordlab selftest")
    table.add_column("check")
    table.add_column("result")
    table.add_column("ms", justify="right")
    for r in results:
        table.add_row(r.name, "pass" if r.passed else "[red]FAIL[/red]", f"{r.duration_ms:.0f}")
    console.print(table)

    failed = [r.name for r in results if not r.passed]
    if failed:
        raise VerificationError(f"selftest failed: {', '.join(failed)}")


_HANDLERS: Dict[str, Callable[[RunConfig], None]] = {
    "census": _run_census,
    "crystal": _run_crystal,
    "spectra": _run_spectra,
    "asympt": _run_asympt,
    "simulate": _run_simulate,
    "figure": _run_figure,
    "selftest": _run_selftest,
}


def run(config: RunConfig) -> int:
    """
    Execute one validated configuration and return its exit code.

    chordlab errors are logged and mapped to their exit codes; anything
    else propagates to `main`.
    """
    try:
        with run_context(subcommand=config.subcommand, target=config.target, seed=config.seed, threads=config.threads):
            _HANDLERS[config.subcommand](config)
    except ChordLabError as e:
        logger.error(f"Run failed: {e.to_dict()}")
        console.print(f"[bold red]error[/bold red] ({type(e).__name__}): {e}")
        return e.exit_code
    return EXIT_OK


# ---------------------------------------------------------------------------
# Click commands
# ---------------------------------------------------------------------------

def output_options(fn):
    fn = click.option("--threads", type=int, default=None, help="Worker processes (default: all cores)")(fn)
    fn = click.option(
        "--output", "output_path", type=click.Path(dir_okay=False), default=None,
        help="Output file; relative paths resolve against CHORDLAB_OUTPUT_DIR (default: stdout)",
    )(fn)
    fn = click.option(
        "--format", "output_format", type=click.Choice(OUTPUT_FORMATS), default="csv", show_default=True
    )(fn)
    return fn


@click.group()
@click.version_option(__version__, prog_name="chordlab")
def cli():
    """Exact counts, spectral certificates, asymptotics and simulations for linear chord diagrams."""


@cli.command()
@click.argument("table", type=click.Choice(sorted(CENSUS_TABLES)))
@click.option("--n", "n", type=int, required=True)
@output_options
def census(table, n, **options):
    """Exact tables by exhaustive enumeration."""
    return run(make_config("census", target=table, n=n, **options))


@cli.command()
@click.argument("target", type=click.Choice(CRYSTAL_TARGETS))
@click.option("--n", "n", type=int, required=True)
@click.option("--k", "k", type=int, default=None)
@click.option("--q", "q", type=int, default=None)
@click.option("--scalable", is_flag=True, help="Use the scalable recurrence for R_{n,k}")
@output_options
def crystal(target, n, k, q, scalable, **options):
    """Closed-form counts of crystallized diagrams."""
    return run(make_config("crystal", target=target, n=n, k=k, q=q, scalable=scalable, **options))


@cli.command()
@click.option("--k-min", "k_min", type=int, default=2, show_default=True)
@click.option("--k-max", "k_max", type=int, default=12, show_default=True)
@output_options
def spectra(k_min, k_max, **options):
    """Exact certificates for the matrices of K_{k+1}."""
    return run(make_config("spectra", k_min=k_min, k_max=k_max, **options))


@cli.command()
@click.argument("target", type=click.Choice(ASYMPT_TARGETS))
@click.option("--n", "n", type=int, required=True)
@click.option("--k", "k", type=int, default=None)
@click.option("--q", "q", type=int, default=None)
@click.option("--b", "b", type=int, default=None)
@output_options
def asympt(target, n, k, q, b, **options):
    """Asymptotic formulas in log space."""
    return run(make_config("asympt", target=target, n=n, k=k, q=q, b=b, **options))


@cli.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--trials", type=int, required=True)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--max-steps", "max_steps", type=int, default=MAX_STEPS, show_default=True)
@click.option("--timeout-budget", "timeout_budget", type=int, default=0, show_default=True,
              help="Timed-out runs tolerated before exiting with code 4")
@output_options
def simulate(n, trials, seed, max_steps, timeout_budget, **options):
    """Run the crystallization process from uniform diagrams."""
    return run(make_config(
        "simulate", n=n, trials=trials, seed=seed, max_steps=max_steps, timeout_budget=timeout_budget, **options
    ))


@cli.command()
@click.argument("target", type=click.Choice(FIGURE_TARGETS))
@click.option("--n", "n", type=int, default=None, help="Diagram size (bridge-moments, rs)")
@click.option("--n-min", "n_min", type=int, default=4, show_default=True, help="First n (kmean)")
@click.option("--n-max", "n_max", type=int, default=None, help="Last n (kmean)")
@click.option("--samples", type=int, default=None, help="Monte Carlo diagrams (bridge-moments)")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--exact", is_flag=True, help="Census instead of Monte Carlo (bridge-moments)")
@click.option("--enqueue", is_flag=True, help="Submit to the RQ 'figures' queue instead of computing inline")
@output_options
def figure(target, n, n_min, n_max, samples, seed, exact, enqueue, **options):
    """Data series behind the bridge-moment, mean-k and R_{n,k} plots."""
    return run(make_config(
        "figure", target=target, n=n, n_min=n_min, n_max=n_max, samples=samples, seed=seed,
        exact=exact, enqueue=enqueue, **options,
    ))


@cli.command()
@click.option("--only", multiple=True, type=click.Choice([name for name, _ in SELF_TESTS]),
              help="Run only the named checks (repeatable)")
@output_options
def selftest(only, **options):
    """Oracle-equivalence suite at desk scale."""
    return run(make_config("selftest", only=list(only), **options))


def main(argv: Optional[List[str]] = None) -> int:
    """Parse argv, run the command and map every outcome to an exit code."""
    init_error_reporting()
    try:
        result = cli.main(args=argv, prog_name="chordlab", standalone_mode=False)
    except click.exceptions.Abort:
        console.print("aborted")
        return EXIT_USAGE
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except ChordLabError as e:
        console.print(f"[bold red]error[/bold red] ({type(e).__name__}): {e}")
        return e.exit_code
    except Exception as e:
        log_error(e, "Unhandled error in chordlab")
        sentry_sdk.capture_exception(e)
        console.print(f"[bold red]unexpected error[/bold red]: {e}")
        return EXIT_USAGE
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
