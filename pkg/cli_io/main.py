# cli_io/main.py
import functools
import logging
import math
import sys

import click
import pandas as pd
from pydantic import ValidationError

from measures.closed_forms import ratio_table
from measures.concurrence import evaluate, partition_score
from measures.spec import Family, MeasureSpec
from mixed_bounds.convex_roof import SearchConfig, convex_roof_upper_bound
from partitions.enumeration import KPartition, iter_k_partitions, stirling2
from state_io.files import load_state
from sweeps.detection import KinkDetector, find_order_reversal
from sweeps.runner import SweepConfig, run_sweep
from tensor_core.states import PureState
from utils.config import (DEFAULT_KINK_FACTOR, DEFAULT_REFINE_ITERS, DEFAULT_RESTARTS, ENTHIER_LOG_LEVEL,
                          ENTHIER_THREADS, resolve_seed)
from utils.errors import EnthierError, InvalidState
from utils.output import dump_report, error_record, frame_to_csv
from verification.suites import SUITES, run_suite

EXIT_VIOLATION = 1
EXIT_INPUT_ERROR = 2

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


def reports_input_errors(command):
    """Turn library and schema errors into a JSON error record and exit code 2."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except EnthierError as e:
            record = error_record(e)
        except ValidationError as e:
            first = e.errors()[0]
            record = error_record(e, code="InvalidParam")
            record["error"]["message"] = f"{'.'.join(str(p) for p in first['loc'])}: {first['msg']}"
        logging.error(f"{record['error']['code']}: {record['error']['message']}")
        click.echo(dump_report(record))
        sys.exit(EXIT_INPUT_ERROR)

    return wrapper


def measure_options(command):
    command = click.option("--param", type=float, default=None, help="q for qkgm/qkme, alpha for alphakgm.")(command)
    command = click.option("--k", "k", type=int, required=True, help="Hierarchy level, 2 <= k <= n.")(command)
    command = click.option("--family", type=click.Choice([f.value for f in Family]), required=True)(command)
    return command


@click.group()
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=ENTHIER_LOG_LEVEL,
              show_default=True)
@click.option("--threads", type=click.IntRange(min=1), default=ENTHIER_THREADS, show_default=True,
              help="Worker cap for cut spectra, search restarts and sweeps.")
@click.pass_context
def cli(ctx, log_level, threads):
    """Hierarchical multipartite entanglement measures."""
    logging.getLogger().setLevel(log_level.upper())
    ctx.obj = {"threads": threads}


@cli.command()
@click.argument("state_file", type=click.Path(dir_okay=False))
@measure_options
@click.option("--scores/--no-scores", default=False, help="Include every partition score.")
@click.option("--partition", "partition", default=None,
              help="Score only this k-partition, e.g. 12|34 (comma-separated indices once n > 9).")
@click.option("--no-normalize", is_flag=True, help="Reject any state off normalization by more than 1e-8.")
@click.pass_context
@reports_input_errors
def compute(ctx, state_file, family, k, param, scores, partition, no_normalize):
    """Evaluate a measure on a pure state file."""
    state = load_state(state_file, allow_repair=not no_normalize)
    if not isinstance(state, PureState):
        raise InvalidState("compute needs a pure state; use 'bound' for mixed states")
    spec = MeasureSpec(Family(family), k, param)
    if partition is not None:
        part = KPartition.parse(partition)
        click.echo(dump_report({"partition": str(part), "score": partition_score(state, part, spec)}))
        return
    result = evaluate(state, spec, with_scores=scores, n_jobs=ctx.obj["threads"])
    click.echo(dump_report(result.to_record()))


@cli.command()
@click.option("--template", "state_template", default="fig1", show_default=True,
              help="fig1, fig2 or a JSON file with sin_amplitudes and cos_amplitudes.")
@click.option("--family", type=click.Choice([Family.KGM.value, Family.QKGM.value, Family.ALPHAKGM.value]),
              default=Family.KGM.value, show_default=True)
@click.option("--k", "k", type=int, default=3, show_default=True)
@click.option("--param", type=float, default=None)
@click.option("--theta-start", type=float, default=0.0, show_default=True)
@click.option("--theta-end", type=float, default=math.pi, show_default="pi")
@click.option("--steps", type=int, default=2001, show_default=True)
@click.option("--kink-factor", type=float, default=DEFAULT_KINK_FACTOR, show_default=True)
@click.option("--output", type=click.Path(dir_okay=False, writable=True), default=None,
              help="Write the CSV here instead of stdout.")
@click.pass_context
@reports_input_errors
def sweep(ctx, state_template, family, k, param, theta_start, theta_end, steps, kink_factor, output):
    """GM and ME curves over theta as CSV (theta, value_gm, value_me)."""
    cfg = SweepConfig(family=family, k=k, param=param, theta_start=theta_start, theta_end=theta_end, steps=steps,
                      state_template=state_template)
    frame = run_sweep(cfg, n_jobs=ctx.obj["threads"])
    detector = KinkDetector(kink_factor)
    gm_kinks = detector.detect(frame["value_gm"])
    me_kinks = detector.detect(frame["value_me"])
    logging.info(f"Kinks: {gm_kinks.size} on the GM curve, {me_kinks.size} on the ME curve "
                 f"at theta = {[round(t, 6) for t in frame['theta'].iloc[me_kinks]]}")
    reversal = find_order_reversal(frame["theta"], frame["value_gm"], frame["value_me"])
    if reversal is not None:
        logging.info(f"Order reversal: {reversal}")
    text = frame_to_csv(frame)
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        logging.info(f"Wrote {len(frame)} rows to {output}")
    else:
        click.echo(text, nl=False)


@cli.command()
@click.option("--alpha", type=float, default=0.5, show_default=True)
@click.option("--n-min", type=int, default=3, show_default=True)
@click.option("--n-max", type=int, default=20, show_default=True)
@reports_input_errors
def ratio(alpha, n_min, n_max):
    """W over GHZ alpha-2-GM ratio from closed forms, as CSV."""
    frame = pd.DataFrame(ratio_table(alpha, n_min, n_max), columns=["n", "w_value", "ghz_value", "ratio"])
    click.echo(frame_to_csv(frame), nl=False)


@cli.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--count-only", is_flag=True)
@reports_input_errors
def partitions(n, k, count_only):
    """List the k-partitions of 1..n in enumeration order, or count them."""
    if count_only:
        count = stirling2(n, k)
        logging.info(f"|T_{k}| for n={n}: {count}")
        click.echo(count)
        return
    for part in iter_k_partitions(n, k):
        click.echo(str(part))


@cli.command()
@click.option("--suite", type=str, required=True, help=f"One of: {', '.join(SUITES)}.")
@click.option("--n", "n", type=int, default=None, help="Qubit count (default 4, 3 for pi-sandwich).")
@click.option("--samples", type=int, default=100, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True, help="Overridden by ENTHIER_SEED.")
@reports_input_errors
def verify(suite, n, samples, seed):
    """Run a seeded property suite; exit 1 on any violation."""
    report = run_suite(suite, n=n, samples=samples, seed=resolve_seed(seed))
    click.echo(dump_report(report.to_record()))
    if not report.passed:
        sys.exit(EXIT_VIOLATION)


@cli.command()
@click.argument("state_file", type=click.Path(dir_okay=False))
@measure_options
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True, help="Overridden by ENTHIER_SEED.")
@click.option("--restarts", type=int, default=DEFAULT_RESTARTS, show_default=True)
@click.option("--refine-iters", type=int, default=DEFAULT_REFINE_ITERS, show_default=True)
@click.option("--no-normalize", is_flag=True)
@click.pass_context
@reports_input_errors
def bound(ctx, state_file, family, k, param, seed, restarts, refine_iters, no_normalize):
    """Convex-roof upper bound for a pure or mixed state file."""
    state = load_state(state_file, allow_repair=not no_normalize)
    cfg = SearchConfig(seed=resolve_seed(seed), restarts=restarts, refine_iters=refine_iters,
                       n_jobs=ctx.obj["threads"])
    value, ensemble = convex_roof_upper_bound(state, MeasureSpec(Family(family), k, param), cfg)
    click.echo(dump_report({"upper_bound": value, "ensemble_size": len(ensemble),
                            "weights": ensemble.probabilities.tolist()}))
